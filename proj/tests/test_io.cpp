#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/io.hpp"
#include "hhq/numio.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/states.hpp"
#include "hhq/types.hpp"

using hhq::cplx;
namespace css = hhq::css;
namespace dipole = hhq::dipole;
namespace io = hhq::io;

TEST_CASE("sha256 reproduces the published test vectors") {
    CHECK(io::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("The quick brown fox jumps over the lazy dog") ==
          "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
    // exercise the padding boundary: 55, 56 and 64 byte messages take
    // different block layouts
    CHECK(io::sha256_hex(std::string(55, 'a')) ==
          "9f4390f8d30c2dd92ec9f095b65e2b9ae9b0a925a5258e241c9f1e910f734318");
    CHECK(io::sha256_hex(std::string(56, 'a')) ==
          "b35439a4ac6f0948b6d6f9e3c6af0f5f590ce20f1bde7090ef7970686ec6738a");
    CHECK(io::sha256_hex(std::string(64, 'a')) ==
          "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
}

TEST_CASE("waveforms parse with comments and the omega directive") {
    const std::string text =
        "# two-cycle demo waveform\n"
        "# omega 2.5\n"
        "0.0 1.0\n"
        "0.5 0.5\n"
        "1.0 -0.25\n"
        "\n"
        "1.5 0.125\n";
    const auto w = io::parse_waveform(text);
    CHECK(w.omega == 2.5);
    CHECK(w.t0 == 0.0);
    CHECK(w.dt == 0.5);
    REQUIRE(w.samples.size() == 4);
    CHECK(w.samples[2] == -0.25);
}

TEST_CASE("waveforms default to unit carrier frequency") {
    const auto w = io::parse_waveform("0 1\n1 2\n2 3\n");
    CHECK(w.omega == 1.0);
}

TEST_CASE("waveform parsing rejects structural problems") {
    CHECK_THROWS_AS(io::parse_waveform("0 1\n"), hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_waveform("0 1 2\n1 2 3\n"), hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_waveform("0 1\n0 2\n"), hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_waveform("1 1\n0 2\n"), hhq::precondition_error);
    // non-uniform spacing fails at the default tolerance, passes when relaxed
    const std::string jitter = "0.0 1\n0.1 2\n0.2001 3\n0.3 4\n";
    CHECK_THROWS_AS(io::parse_waveform(jitter), hhq::precondition_error);
    CHECK_NOTHROW(io::parse_waveform(jitter, 0.01));
    CHECK_THROWS_AS(io::parse_waveform(jitter, 0.0), hhq::precondition_error);
}

TEST_CASE("shift tables round-trip bit-exactly through text") {
    const auto t = dipole::table_from_values(
        0.0137, 2.5,
        {cplx{1e7, -1.0 / 3.0}, cplx{-0.25, 5e-324}, cplx{0.0, -0.0}},
        {0.1, -1e-17, 3.14159});
    const auto back = io::parse_shift_table(io::format_shift_table(t));
    CHECK(back.kappa == t.kappa);
    CHECK(back.omega == t.omega);
    REQUIRE(back.N == t.N);
    CHECK(std::memcmp(back.chi.data(), t.chi.data(), t.N * sizeof(cplx)) == 0);
    CHECK(std::memcmp(back.phi.data(), t.phi.data(), t.N * sizeof(double)) == 0);
}

TEST_CASE("shift table parsing is strict about its key set") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.1, 0}, cplx{0.2, 0}});
    const std::string good = io::format_shift_table(t);
    CHECK_THROWS_AS(io::parse_shift_table(good + "q3.chi_re 0.5\n"), hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_shift_table(good + "kappa 0.02\n"), hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_shift_table("kappa 0.01\nomega 1\nN 2\n"),
                    hhq::precondition_error);
    CHECK_THROWS_AS(io::parse_shift_table(""), hhq::precondition_error);
    // comments are fine
    CHECK_NOTHROW(io::parse_shift_table("# annotated\n" + good));
}

TEST_CASE("phase grids print a header plus one row of values per line") {
    hhq::phase_grid g;
    g.center = cplx{0.5, -0.5};
    g.radius = 0.75;
    g.step = 0.25;
    const std::size_t axis = hhq::grid_axis_points(g);
    g.values.assign(axis * axis, 0.0);
    g.values[3] = 1.25;
    const std::string text = io::format_phase_grid(g, "wigner demo");
    CHECK(text.find("wigner demo") != std::string::npos);
    CHECK(text.find("axis_points 7") != std::string::npos);
    std::size_t data_lines = 0, header_lines = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line[0] == '#')
            ++header_lines;
        else if (!line.empty())
            ++data_lines;
        pos = (nl == std::string::npos) ? text.size() : nl + 1;
    }
    CHECK(data_lines == axis);
    CHECK(header_lines >= 4);

    hhq::phase_grid hollow;
    hollow.radius = 1.0;
    hollow.step = 0.25;
    CHECK_THROWS_AS(io::format_phase_grid(hollow, "x"), hhq::precondition_error);
}

TEST_CASE("named states embed a state block that parses back verbatim") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.8, -0.1}, cplx{0.3, 0.2}});
    const auto s = hhq::states::build_cat(cplx{0.2, 0.1}, t);
    const std::string text = io::format_named_state(s);
    CHECK(text.find("cat") != std::string::npos);
    CHECK(text.find("[shift_table]") != std::string::npos);
    const std::size_t at = text.find("[state]");
    REQUIRE(at != std::string::npos);
    const std::string body = text.substr(at + std::string("[state]\n").size());
    const auto back = css::deserialize(body);
    CHECK(css::serialize(back) == css::serialize(s.state));
}

TEST_CASE("fock vectors print their shape and every amplitude") {
    const auto v = hhq::fock::coherent_fock(cplx{0.5, 0}, 8);
    const std::string text = io::format_fock_vector(v, "test vector");
    CHECK(text.find("test vector") != std::string::npos);
    CHECK(text.find("cutoff 8") != std::string::npos);
    CHECK(text.find("n_modes 1") != std::string::npos);
    CHECK(text.find("leakage") != std::string::npos);
    std::size_t amp_lines = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line[0] == '(') ++amp_lines;
        pos = (nl == std::string::npos) ? text.size() : nl + 1;
    }
    CHECK(amp_lines == 8);
}

TEST_CASE("text files round-trip and report open failures") {
    const std::string path = "io_test_scratch.txt";
    const std::string payload = "line one\nline two\n# comment\n";
    io::write_text_file(path, payload);
    CHECK(io::read_text_file(path) == payload);
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::read_text_file("definitely/not/a/real/path.txt"), hhq::config_error);
}
