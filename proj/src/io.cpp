#include "hhq/io.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "hhq/css.hpp"
#include "hhq/numio.hpp"

namespace hhq::io {

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokens_of(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

}  // namespace

dipole::dipole_waveform parse_waveform(std::string_view text, double spacing_rel_tol) {
    if (!(spacing_rel_tol > 0))
        throw precondition_error("parse_waveform: spacing_rel_tol must be positive");
    std::vector<double> times, values;
    double omega = 1.0;
    size_t lineno = 0;
    std::string_view rest = text;
    while (!rest.empty()) {
        size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0][0] == '#') {
            // "# omega <value>" overrides the carrier frequency; other
            // headers are free-form comments.
            if (toks.size() == 3 && toks[1] == "omega") omega = num::parse_double(toks[2]);
            continue;
        }
        if (toks.size() != 2)
            throw precondition_error("parse_waveform: line " + std::to_string(lineno) +
                                     ": expected two columns, got " +
                                     std::to_string(toks.size()));
        times.push_back(num::parse_double(toks[0]));
        values.push_back(num::parse_double(toks[1]));
    }
    if (times.size() < 2)
        throw precondition_error("parse_waveform: need at least 2 samples, got " +
                                 std::to_string(times.size()));
    const double dt0 = times[1] - times[0];
    if (!(dt0 > 0)) throw precondition_error("parse_waveform: time column must be increasing");
    for (size_t i = 1; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (std::abs(dt - dt0) > spacing_rel_tol * std::abs(dt0))
            throw precondition_error(
                "parse_waveform: non-uniform spacing at sample " + std::to_string(i + 1) +
                ": dt=" + num::fmt(dt) + " vs dt0=" + num::fmt(dt0) +
                " (relative tolerance " + num::fmt(spacing_rel_tol) + ")");
    }
    dipole::dipole_waveform w;
    w.samples = std::move(values);
    w.t0 = times[0];
    w.dt = dt0;
    w.omega = omega;
    dipole::validate(w);
    return w;
}

std::string format_shift_table(const dipole::shift_table& t) {
    dipole::validate(t);
    std::string out;
    out += "kappa " + num::fmt(t.kappa) + "\n";
    out += "omega " + num::fmt(t.omega) + "\n";
    out += "N " + std::to_string(t.N) + "\n";
    for (size_t q = 1; q <= t.N; ++q) {
        const std::string p = "q" + std::to_string(q) + ".";
        out += p + "chi_re " + num::fmt(t.chi_of(q).real()) + "\n";
        out += p + "chi_im " + num::fmt(t.chi_of(q).imag()) + "\n";
        out += p + "phi " + num::fmt(t.phi_of(q)) + "\n";
    }
    return out;
}

dipole::shift_table parse_shift_table(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::string_view rest = text;
    size_t lineno = 0;
    while (!rest.empty()) {
        size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() != 2)
            throw precondition_error("parse_shift_table: line " + std::to_string(lineno) +
                                     ": expected 'key value'");
        if (!kv.emplace(toks[0], toks[1]).second)
            throw precondition_error("parse_shift_table: duplicate key '" + toks[0] + "'");
    }
    auto take = [&kv](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw precondition_error("parse_shift_table: missing key '" + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    dipole::shift_table t;
    t.kappa = num::parse_double(take("kappa"));
    t.omega = num::parse_double(take("omega"));
    const double n_raw = num::parse_double(take("N"));
    if (!(n_raw >= 1) || n_raw != std::floor(n_raw))
        throw precondition_error("parse_shift_table: N must be a positive integer");
    t.N = static_cast<size_t>(n_raw);
    t.chi.resize(t.N);
    t.phi.resize(t.N);
    for (size_t q = 1; q <= t.N; ++q) {
        const std::string p = "q" + std::to_string(q) + ".";
        t.chi[q - 1] = cplx{num::parse_double(take(p + "chi_re")),
                            num::parse_double(take(p + "chi_im"))};
        t.phi[q - 1] = num::parse_double(take(p + "phi"));
    }
    if (!kv.empty())
        throw precondition_error("parse_shift_table: unknown key '" + kv.begin()->first + "'");
    dipole::validate(t);
    return t;
}

std::string format_phase_grid(const phase_grid& g, std::string_view title) {
    validate(g);
    if (g.values.empty())
        throw precondition_error("format_phase_grid: grid has no values");
    const size_t n = grid_axis_points(g);
    std::string out;
    out += "# " + std::string(title) + "\n";
    out += "# center " + num::fmt(g.center) + "\n";
    out += "# radius " + num::fmt(g.radius) + "\n";
    out += "# step " + num::fmt(g.step) + "\n";
    out += "# axis_points " + std::to_string(n) + "\n";
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (j) out += ' ';
            out += num::fmt(g.values[i * n + j]);
        }
        out += '\n';
    }
    return out;
}

std::string format_named_state(const states::named_state& s) {
    std::string out;
    out += "state " + std::string(states::label_name(s.label)) + "\n";
    out += "alpha " + num::fmt(s.alpha) + "\n";
    out += "emission_probability " + num::fmt(s.emission_probability) + "\n";
    out += "[shift_table]\n";
    out += format_shift_table(s.table);
    out += "[state]\n";
    out += css::serialize(s.state);
    return out;
}

std::string format_fock_vector(const fock::fock_vector& v, std::string_view title) {
    std::string out;
    out += "# " + std::string(title) + "\n";
    out += "cutoff " + std::to_string(v.cutoff) + "\n";
    out += "n_modes " + std::to_string(v.n_modes) + "\n";
    out += "leakage " + num::fmt(v.leakage) + "\n";
    for (Eigen::Index i = 0; i < v.amps.size(); ++i) out += num::fmt(v.amps[i]) + "\n";
    return out;
}

namespace {

// FIPS 180-4 SHA-256, used for the output manifest so runs can be compared
// without shipping the (large) grid files around.
struct sha256_ctx {
    std::array<uint32_t, 8> h{0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                              0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
    std::array<uint8_t, 64> buf{};
    uint64_t total = 0;
    size_t fill = 0;
};

constexpr std::array<uint32_t, 64> sha256_k{
    0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u,
    0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u,
    0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u,
    0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau,
    0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
    0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu, 0x53380d13u,
    0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
    0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u,
    0x19a4c116u, 0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au,
    0x5b9cca4fu, 0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
    0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};

uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

void sha256_block(sha256_ctx& c, const uint8_t* p) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
        w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
               (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
        const uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        const uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = c.h[0], b = c.h[1], cc = c.h[2], d = c.h[3];
    uint32_t e = c.h[4], f = c.h[5], g = c.h[6], h = c.h[7];
    for (int i = 0; i < 64; ++i) {
        const uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const uint32_t ch = (e & f) ^ (~e & g);
        const uint32_t t1 = h + S1 + ch + sha256_k[i] + w[i];
        const uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const uint32_t maj = (a & b) ^ (a & cc) ^ (b & cc);
        const uint32_t t2 = S0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = cc;
        cc = b;
        b = a;
        a = t1 + t2;
    }
    c.h[0] += a;
    c.h[1] += b;
    c.h[2] += cc;
    c.h[3] += d;
    c.h[4] += e;
    c.h[5] += f;
    c.h[6] += g;
    c.h[7] += h;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    sha256_ctx c;
    const auto* p = reinterpret_cast<const uint8_t*>(data.data());
    size_t n = data.size();
    c.total = uint64_t(n) * 8;
    while (n >= 64) {
        sha256_block(c, p);
        p += 64;
        n -= 64;
    }
    std::memcpy(c.buf.data(), p, n);
    c.fill = n;
    c.buf[c.fill++] = 0x80;
    if (c.fill > 56) {
        std::memset(c.buf.data() + c.fill, 0, 64 - c.fill);
        sha256_block(c, c.buf.data());
        c.fill = 0;
    }
    std::memset(c.buf.data() + c.fill, 0, 56 - c.fill);
    for (int i = 0; i < 8; ++i) c.buf[56 + i] = uint8_t(c.total >> (56 - 8 * i));
    sha256_block(c, c.buf.data());
    std::string hex;
    hex.reserve(64);
    static const char* digits = "0123456789abcdef";
    for (uint32_t v : c.h)
        for (int s = 28; s >= 0; s -= 4) hex.push_back(digits[(v >> s) & 0xf]);
    return hex;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw config_error("read failed: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw config_error("write failed: " + path);
}

}  // namespace hhq::io
