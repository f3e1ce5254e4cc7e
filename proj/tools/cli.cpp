#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cff::cli {

using json = nlohmann::ordered_json;

std::pair<std::uint32_t, int> parse_prime_power(const std::string& q) {
    std::uint64_t p = 0;
    int e = 1;
    try {
        auto caret = q.find('^');
        std::size_t used = 0;
        p = std::stoull(q.substr(0, caret), &used);
        if (used != (caret == std::string::npos ? q.size() : caret)) throw std::invalid_argument(q);
        if (caret != std::string::npos) e = std::stoi(q.substr(caret + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("q must be written as an integer prime power or p^e: " + q);
    }
    if (e < 1) throw std::invalid_argument("q: exponent must be positive");
    if (e == 1) {
        // q given as an integer: split off the prime
        std::uint64_t base = 0;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                base = d;
                break;
            }
        if (base) {
            std::uint64_t x = p;
            int k = 0;
            while (x % base == 0) {
                x /= base;
                ++k;
            }
            if (x != 1) throw std::invalid_argument("q is not a prime power: " + q);
            p = base;
            e = k;
        }
    }
    if (p < 2 || !is_prime_number(static_cast<std::uint32_t>(p))) throw std::invalid_argument("q is not a prime power: " + q);
    return {static_cast<std::uint32_t>(p), e};
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["q"] = c.q;
    j["P"] = c.P;
    j["inf_depth"] = c.inf_depth;
    j["padic_N"] = c.padic_N;
    j["guard"] = c.guard;
    j["threads"] = c.threads;
    j["format"] = c.format;
    j["out"] = c.out;
    j["suites"] = c.suites;
    j["max_deg_f"] = c.max_deg_f;
    j["max_n"] = c.max_n;
    j["place"] = c.place;
    j["max_m"] = c.max_m;
    j["euler_B"] = c.euler_B;
    j["seed"] = c.seed;
    return j;
}

std::string config_digest(const RunConfig& c) {
    // output location and thread count do not change the results
    json j = config_json(c);
    j.erase("out");
    j.erase("threads");
    j.erase("format");
    const std::string text = j.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

namespace {

struct Setup {
    FieldPtr Fq;
    Poly P;
};

Setup setup(const RunConfig& c) {
    if (c.P.empty()) throw std::invalid_argument("--P is required");
    auto [p, e] = parse_prime_power(c.q);
    Setup s;
    s.Fq = make_field(p, e);
    try {
        s.P = parse_poly(c.P, s.Fq.get());
    } catch (const std::exception& ex) {
        throw std::invalid_argument(std::string("cannot parse P: ") + ex.what());
    }
    if (!s.P.is_monic() || s.P.deg() < 1 || !is_irreducible(s.P)) throw std::invalid_argument("P must be monic irreducible of positive degree over F_" + c.q);
    if (c.inf_depth < 0 || c.padic_N < 1 || c.guard < 1 || c.euler_B < 1 || c.max_deg_f < 1 || c.max_m < 1)
        throw std::invalid_argument("depths, N, guard and degree bounds must be at least 1");
    return s;
}

std::string parity(const CycField& K, std::uint64_t n) { return K.character(n).odd ? "odd" : "even"; }

std::string residue_text(const ResidueField& R, Elem x) { return R.to_poly(x).to_string("theta"); }

// runs jobs with at most `threads` at a time, results in submission order
template <class T>
std::vector<T> run_parallel(std::vector<std::function<T()>> jobs, unsigned threads) {
    std::vector<T> out(jobs.size());
    threads = std::max(1u, threads);
    for (std::size_t i = 0; i < jobs.size(); i += threads) {
        std::vector<std::future<T>> wave;
        for (std::size_t k = i; k < std::min(jobs.size(), i + threads); ++k) wave.push_back(std::async(std::launch::async, jobs[k]));
        for (std::size_t k = 0; k < wave.size(); ++k) out[i + k] = wave[k].get();
    }
    return out;
}

const char* const kStretchP = "T^9-T^6-T^4-T^3-T^2+1";

void bc_scan(const RunConfig& c, Report& rep) {
    auto s = setup(c);
    ResidueField R(s.Fq, s.P);
    auto scan = hr_scan(R, HrMode::streaming);
    rep.suites.push_back(verify_hr(R, 0.01, c.seed));
    const std::uint64_t n0 = R.units();
    Table t{"bc_scan", {"n", "BC'_n_mod_P_is_zero", "character_exponent_1_minus_n_mod_qd_minus_1"}, {}};
    json rows = json::array();
    json irregular = json::array();
    for (std::size_t k = 0; k < scan.indices.size(); ++k) {
        const std::uint64_t n = scan.indices[k];
        if (c.max_n && n > c.max_n) break;
        const bool zero = scan.residues[k] == 0;
        const std::uint64_t chi = (n0 + 1 - n % n0) % n0;
        t.rows.push_back({std::to_string(n), zero ? "1" : "0", std::to_string(chi)});
        rows.push_back({{"n", n}, {"residue", residue_text(R, scan.residues[k])}, {"is_zero", zero}, {"character_exponent", chi}});
        if (zero) irregular.push_back(n);
    }
    rep.tables.push_back(std::move(t));
    rep.extra["irregular"] = irregular;
    rep.extra["witnesses"] = rows;
    rep.notes.push_back("an irregular n flags a nontrivial omega^(1-n) eigenspace of the class module mod P (odd part only)");
    if (s.Fq->size() == 3 && s.P == parse_poly(kStretchP, s.Fq.get())) rep.notes.push_back(kEvenPartCitation);
}

void l_values(const RunConfig& c, Report& rep) {
    auto s = setup(c);
    CycField K(s.Fq, s.P);
    VerificationReport v;
    v.suite = "l-values";
    v.param("q", c.q);
    v.param("P", K.P().to_string());
    Table t{"l_values", {"n", "parity", "value", "certified_precision", "v_P"}, {}};
    if (c.place == "inf") {
        const int depth = c.inf_depth ? c.inf_depth : default_inf_depth(K);
        v.param("depth", std::to_string(depth));
        auto tab = class_sums_inf(K, depth);
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            auto L = l_inf(K, tab, n);
            t.rows.push_back({std::to_string(n), parity(K, n), L.value.to_string(1 << 20), std::to_string(L.certified), ""});
            v.add("lvalues.leading.n=" + std::to_string(n), L.value.val() == 0 && L.value.lead() == 1 ? CheckStatus::pass : CheckStatus::fail,
                  "valuation 0, leading coefficient 1", L.certified, L.certified);
        }
    } else if (c.place == "P") {
        const int N = c.padic_N;
        v.param("N", std::to_string(N));
        auto tab = class_sums_padic(K, N, N * K.d() + K.d());
        for (std::uint64_t n = 0; n < K.n0(); ++n) {
            auto L = l_padic(K, tab, n);
            const bool odd = K.character(n).odd;
            t.rows.push_back({std::to_string(n), parity(K, n), L.value.to_string(), std::to_string(N), std::to_string(L.vP)});
            bool blocks = true;
            for (int deg = N * K.d() + 1; deg <= N * K.d() + K.d(); ++deg) blocks = blocks && l_padic_block(K, tab, n, deg).is_zero();
            const bool ok = (odd ? L.value.is_zero() : !L.value.is_zero()) && blocks;
            v.add("lvalues.padic_parity.n=" + std::to_string(n), ok ? CheckStatus::pass : CheckStatus::fail,
                  odd ? "odd character: vanishes mod P^N" : "even character: nonzero mod P^N", N, N);
        }
    } else {
        throw std::invalid_argument("--place must be inf or P");
    }
    rep.suites.push_back(std::move(v));
    rep.tables.push_back(std::move(t));
}

const std::vector<std::string> kSuites{"cnf", "anderson", "b1", "cong", "euler", "charpoly", "padic-explog"};

void verify(const RunConfig& c, Report& rep) {
    std::vector<std::string> names;
    for (const auto& x : c.suites) {
        if (x == "all") {
            names.insert(names.end(), kSuites.begin(), kSuites.end());
        } else if (std::find(kSuites.begin(), kSuites.end(), x) != kSuites.end()) {
            names.push_back(x);
        } else {
            throw std::invalid_argument("unknown suite: " + x);
        }
    }
    std::vector<std::string> uniq;
    for (const auto& x : names)
        if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
    auto s = setup(c);
    auto K = std::make_shared<CycField>(s.Fq, s.P);
    const int depth = c.inf_depth ? c.inf_depth : default_inf_depth(*K);
    std::vector<std::function<VerificationReport()>> jobs;
    for (const auto& name : uniq) {
        if (name == "cnf") jobs.emplace_back([=] { return verify_cnf(*K, depth); });
        if (name == "anderson")
            jobs.emplace_back([=] {
                std::vector<std::uint64_t> ms;
                for (int m = 1; m <= c.max_m; ++m) ms.push_back(static_cast<std::uint64_t>(m));
                return verify_anderson(*K, ms, c.padic_N, depth, c.guard);
            });
        if (name == "b1") jobs.emplace_back([=] { return verify_b1_all(*K, depth); });
        if (name == "cong") jobs.emplace_back([=] { return verify_congruence(*K); });
        if (name == "euler") jobs.emplace_back([=] { return verify_euler(*K, c.euler_B); });
        if (name == "charpoly") jobs.emplace_back([=] { return verify_charpoly(*K, c.max_deg_f); });
        if (name == "padic-explog") jobs.emplace_back([=] { return verify_padic_explog(*K, c.padic_N, 50, c.seed); });
    }
    rep.suites = run_parallel(std::move(jobs), c.threads);
}

std::string case_name(FittingCase k) {
    switch (k) {
        case FittingCase::trivial: return "trivial";
        case FittingCase::frobenius_twist: return "frobenius_twist";
        default: return "generic";
    }
}

void fitting(const RunConfig& c, Report& rep) {
    auto s = setup(c);
    CycField K(s.Fq, s.P);
    VerificationReport v;
    v.suite = "fitting";
    v.param("q", c.q);
    v.param("P", K.P().to_string());
    v.param("N", std::to_string(c.padic_N));
    auto odd = odd_fitting_report(K, std::max(c.padic_N, 8));
    Table t{"odd_part", {"n", "case", "B_1_chi_inverse", "generator", "vP_B1", "length"}, {}};
    for (const auto& row : odd.rows) {
        t.rows.push_back({std::to_string(row.n), case_name(row.kind), row.b1_inverse.to_string(), row.generator.to_string(), std::to_string(row.vP_b1),
                          std::to_string(row.length)});
        v.add_bool("fitting.generator.n=" + std::to_string(row.n), row.generator_integral, "generator lies in F[T]");
    }
    v.add_bool("fitting.descent", odd.descends, "odd-part generators are compatible with Frobenius");
    rep.tables.push_back(std::move(t));

    auto led = padic_ledger(K, c.padic_N);
    Table e{"even_part", {"n", "vP_L_P", "certified"}, {}};
    for (const auto& row : led.rows) {
        e.rows.push_back({std::to_string(row.n), row.certified ? std::to_string(row.vP) : ">=" + std::to_string(row.vP), row.certified ? "1" : "0"});
        v.add("fitting.even_ledger.n=" + std::to_string(row.n), row.certified ? CheckStatus::pass : CheckStatus::indeterminate,
              row.certified ? "L_P(1,chi) nonzero mod P^N" : "L_P(1,chi) vanishes mod P^N; raise N", c.padic_N, c.padic_N);
    }
    rep.tables.push_back(std::move(e));
    rep.notes.push_back(kEvenLedgerCaveat);
    rep.suites.push_back(std::move(v));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

Report run(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.config = c;
    if (c.command == "bc-scan") bc_scan(c, rep);
    else if (c.command == "l-values") l_values(c, rep);
    else if (c.command == "verify") verify(c, rep);
    else if (c.command == "fitting") fitting(c, rep);
    else throw std::invalid_argument("unknown command: " + c.command);
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

json to_json(const Report& r) {
    json j;
    j["config"] = config_json(r.config);
    j["digest"] = "sha256:" + config_digest(r.config);
    json suites = json::array();
    for (const auto& s : r.suites) {
        json js;
        js["name"] = s.suite;
        json params = json::object();
        for (const auto& [k, v] : s.params) params[k] = v;
        js["params"] = params;
        json checks = json::array();
        for (const auto& ch : s.checks)
            checks.push_back({{"id", ch.id}, {"status", to_string(ch.status)}, {"lhs_precision", ch.lhs_precision}, {"rhs_precision", ch.rhs_precision}, {"detail", ch.detail}});
        js["checks"] = checks;
        suites.push_back(js);
    }
    j["suite_results"] = suites;
    json tables = json::object();
    for (const auto& t : r.tables) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json o;
            for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = row[i];
            rows.push_back(o);
        }
        tables[t.name] = rows;
    }
    j["tables"] = tables;
    for (const auto& [k, v] : r.extra.items()) j[k] = v;
    j["notes"] = r.notes;
    j["timing_ms"] = r.timing_ms;
    return j;
}

void write_json(std::ostream& os, const Report& r) { os << to_json(r).dump(2) << '\n'; }

void write_csv(std::ostream& os, const Report& r) {
    // tables when the command produces one, otherwise the check list
    if (r.config.command == "verify" || r.tables.empty()) {
        os << "suite,id,status,lhs_precision,rhs_precision,detail\n";
        for (const auto& s : r.suites)
            for (const auto& c : s.checks)
                os << csv_field(s.suite) << ',' << csv_field(c.id) << ',' << to_string(c.status) << ',' << c.lhs_precision << ',' << c.rhs_precision << ','
                   << csv_field(c.detail) << '\n';
        return;
    }
    bool first = true;
    for (const auto& t : r.tables) {
        if (!first) os << '\n';
        first = false;
        for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
            os << '\n';
        }
    }
}

void write_text(std::ostream& os, const Report& r) {
    os << r.config.command << " q=" << r.config.q << " P=" << r.config.P << "  digest " << config_digest(r.config).substr(0, 16) << '\n';
    for (const auto& t : r.tables) {
        os << "\n[" << t.name << "] " << t.rows.size() << " rows\n";
        for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? " | " : "") << t.header[i];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " | " : "") << row[i];
            os << '\n';
        }
    }
    for (const auto& s : r.suites) {
        os << "\n[" << s.suite << "] " << s.count(CheckStatus::pass) << '/' << s.checks.size() << " pass\n";
        for (const auto& c : s.checks) os << "  " << std::left << std::setw(14) << to_string(c.status) << c.id << "  " << c.detail << '\n';
    }
    for (const auto& n : r.notes) os << "\nnote: " << n << '\n';
    os << "\ntime " << std::fixed << std::setprecision(1) << r.timing_ms << " ms\n";
}

int exit_status(const Report& r) {
    bool fail = false, indet = false;
    for (const auto& s : r.suites) {
        fail = fail || s.count(CheckStatus::fail) > 0;
        indet = indet || s.count(CheckStatus::indeterminate) > 0;
    }
    return fail ? 1 : (indet ? 3 : 0);
}

}  // namespace cff::cli
