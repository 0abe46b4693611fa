// syzmod: syzygy bundles, their cohomology and moduli dimensions.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "syzmod/golden.hpp"
#include "syzmod/json_io.hpp"

namespace {

using namespace syzmod;

struct Config {
    std::string variety;
    std::string bundle;
    std::string input;
    std::string format = "text";
    std::int64_t w = 0;
    std::string policy = "full";
    int steps = 1;
    bool require_v = false;
    int scan_cap = kDefaultScanCap;
};

struct Context {
    VarietySpec x;
    BundleRegistry bundles;
};

Context load_context(const Config& c) {
    std::optional<VarietySpec> base;
    if (!c.variety.empty()) base = catalog(c.variety);
    Context ctx;
    if (!c.input.empty()) {
        LoadedInput in = load_input_file(c.input, base);
        if (in.variety && base) throw PreconditionError("--input defines a variety; drop --variety");
        ctx.bundles = std::move(in.bundles);
        if (in.variety) base = std::move(in.variety);
    }
    if (!base) throw PreconditionError("no variety: pass --variety (P2, P3, ..., CY3-quintic) or an --input with dim");
    ctx.x = std::move(*base);
    return ctx;
}

std::string with_source(const DimEntry& e) { return e.str() + " [" + to_string(e.source) + "]"; }

std::string table_text(const CohomologyTable& t) {
    std::ostringstream os;
    os << t.str() << "  ";
    for (int i = 0; i <= t.n; ++i) os << (i ? ", " : "[") << to_string(t[i].source);
    os << "]";
    if (auto chi = t.chi()) os << "  chi = " << *chi;
    return os.str();
}

std::string tri_text(const TriFact& f) {
    std::string s = to_string(f.value);
    if (f.value != Tri::Unknown) s += std::string(" [") + to_string(f.source) + "]";
    if (!f.reason.empty()) s += " (" + f.reason + ")";
    return s;
}

void print_facts(std::ostream& os, const std::string& label, const BundleFacts& f) {
    os << label << "\n";
    os << "  rank                " << f.rank << "\n";
    os << "  chern               " << (f.chern ? f.chern->total().str() : "unavailable") << "\n";
    os << "  h                   " << table_text(f.h) << "\n";
    os << "  h_dual              " << table_text(f.h_dual) << "\n";
    if (f.h_end) os << "  h_end               " << table_text(*f.h_end) << "\n";
    os << "  globally generated  " << tri_text(f.globally_generated) << "\n";
    os << "  simple              " << tri_text(f.simple) << "\n";
    for (const auto& n : f.notes) os << "  note: " << n << "\n";
}

void print_membership(std::ostream& os, const MembershipVerdict& v) {
    os << "membership: in_U = " << to_string(v.in_U) << ", in_V = " << to_string(v.in_V) << "\n";
    for (const auto& f : v.facts) os << "  " << std::left << std::setw(20) << f.condition << status_word(f.status) << " [" << f.source << "]\n";
}

void print_syzygy(std::ostream& os, const SyzygyResult& r) {
    print_facts(os, "F = " + to_string(r.F_expr), r.F);
    print_facts(os, "S = " + to_string(r.S_expr), r.S);
    print_membership(os, r.membership);
    os << "simple     " << tri_text(r.simple) << "\n";
    os << "h^0(S)     " << with_source(r.h0_S) << "\n";
    os << "h^0(S*)    " << with_source(r.h0_Sdual) << "\n";
    os << "embedding  " << to_string(r.embedding) << "\n";
    for (const auto& s : r.embedding_reasons) os << "  " << s << "\n";
    for (const auto& a : r.assumptions) os << "assumption: " << a << "\n";
}

void print_moduli(std::ostream& os, const ModuliReport& m) {
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("?"); };
    os << "v = h^0(F)                " << opt(m.v) << "\n";
    os << "Grassmann fiber w(v-w)    " << opt(m.dim_G0_fiber) << "\n";
    os << "ext^1(F,F)                " << with_source(m.dim_U_tangent_at_F) << "\n";
    os << "G0 tangent (geometric)    " << with_source(m.g0_tangent.geometric) << "\n";
    os << "G0 tangent (quotient)     " << with_source(m.g0_tangent.quot_based) << "\n";
    os << "G0 tangent (PGL count)    " << with_source(m.g0_tangent.quot_based_pgl) << "\n";
    os << "h^0(S* (x) F)             " << with_source(m.g0_tangent.hom_SF) << "\n";
    os << "tangent ext^1(S,S)        " << with_source(m.tangent_Spl_S) << "\n";
    os << "obstruction ext^2(S,S)    " << with_source(m.obstruction_Spl_S) << "\n";
    os << "dim Spl at S              " << with_source(m.dim_Spl_at_S) << "\n";
    os << "1 - chi(End S)            " << with_source(m.spl_hrr.value);
    if (m.spl_hrr.chi_end) os << "  chi(End S) = " << *m.spl_hrr.chi_end;
    if (!m.spl_hrr.refusal.empty()) os << "  (" << m.spl_hrr.refusal << ")";
    os << "\n";
    os << "dim syzygy locus          " << with_source(m.locus.dim_syz) << "\n";
    os << "codim syzygy locus        " << with_source(m.locus.codim) << "\n";
    os << "normal fiber h^2(S (x) F*) " << with_source(m.locus.normal_fiber_dim) << "\n";
    if (m.endo) {
        os << "End(S)                    " << table_text(m.endo->end) << "\n";
        os << "F* (x) S                  " << table_text(m.endo->fdual_S) << "\n";
    }
    os << "convention: " << m.convention_note << "\n";
    for (const auto& n : m.notes) os << "note: " << n << "\n";
}

void emit(const Config& c, const Json& j, const std::function<void(std::ostream&)>& text) {
    if (c.format == "json") std::cout << canonical_dump(j);
    else text(std::cout);
}

int blocked_exit(const std::string& why) {
    std::cerr << "syzmod: verdict blocked: " << why << "\n";
    return exit_code(ErrorKind::Unknown);
}

int cmd_describe(const Config& c) {
    Context ctx = load_context(c);
    Resolver r(ctx.x);
    const SheafExpr e = parse_expr(c.bundle, &ctx.bundles);
    const BundleFacts& f = r.facts(e, 0);
    Json j;
    j["variety"] = ctx.x.name;
    j["bundle"] = to_string(e);
    j["facts"] = to_json(f);
    j["membership"] = to_json(check_membership(f, ctx.x));
    emit(c, j, [&](std::ostream& os) {
        os << "variety " << ctx.x.name << "\n";
        print_facts(os, "bundle " + to_string(e), f);
        print_membership(os, check_membership(f, ctx.x));
    });
    return 0;
}

int cmd_syzygy(const Config& c) {
    Context ctx = load_context(c);
    Resolver r(ctx.x);
    const SheafExpr F = parse_expr(c.bundle, &ctx.bundles);
    const SyzygyResult res = build_syzygy(r, F, c.w);
    const ReconstructReport rec = reconstruct_check(res, ctx.x);
    Json j;
    j["variety"] = ctx.x.name;
    j["syzygy"] = to_json(res);
    j["reconstruction"] = to_json(rec);
    emit(c, j, [&](std::ostream& os) {
        os << "variety " << ctx.x.name << "\n";
        print_syzygy(os, res);
        if (rec.refused) {
            os << "reconstruction refused: " << rec.reason << "\n";
        } else {
            for (const auto& row : rec.checks)
                os << "reconstruction " << row.name << ": " << to_string(row.passed) << " (" << row.detail << ")\n";
        }
    });
    if (res.membership.in_U == Tri::Unknown) return blocked_exit("membership of F in U is unknown");
    return 0;
}

int cmd_moduli(const Config& c) {
    Context ctx = load_context(c);
    Resolver r(ctx.x);
    const SheafExpr F = parse_expr(c.bundle, &ctx.bundles);
    const SyzygyResult res = build_syzygy(r, F, c.w);
    const ModuliReport m = moduli_report(r, F, c.w, res);
    Json j;
    j["variety"] = ctx.x.name;
    j["F"] = to_string(F);
    j["w"] = c.w;
    j["membership"] = to_json(res.membership);
    j["moduli"] = to_json(m);
    emit(c, j, [&](std::ostream& os) {
        os << "variety " << ctx.x.name << ", F = " << to_string(F) << ", w = " << c.w << "\n";
        print_membership(os, res.membership);
        print_moduli(os, m);
    });
    if (res.membership.in_U == Tri::Unknown) return blocked_exit("membership of F in U is unknown");
    return 0;
}

int cmd_tower(const Config& c) {
    Context ctx = load_context(c);
    Resolver r(ctx.x);
    const SheafExpr start = parse_expr(c.bundle, &ctx.bundles);
    TowerPolicy p;
    if (c.policy == "full") p.w_choice = WPolicy::Full;
    else if (c.policy == "fixed") p.w_choice = WPolicy::Fixed;
    else if (c.policy == "max-grassmann") p.w_choice = WPolicy::MaxGrassmann;
    else throw PreconditionError("unknown policy '" + c.policy + "' (full, fixed, max-grassmann)");
    if (p.w_choice == WPolicy::Fixed && c.w <= 0) throw PreconditionError("--policy fixed needs -w");
    p.fixed_w = c.w;
    p.steps = c.steps;
    p.require_V = c.require_v;
    p.scan_cap = c.scan_cap;
    const TowerTrace t = tower_run(r, start, p);
    Json j;
    j["variety"] = ctx.x.name;
    j["start"] = to_string(start);
    j["trace"] = to_json(t);
    emit(c, j, [&](std::ostream& os) {
        os << "variety " << ctx.x.name << ", start " << to_string(start) << "\n";
        os << std::left << std::setw(5) << "step" << std::setw(44) << "input" << std::setw(6) << "N" << std::setw(5)
           << "reg" << std::setw(6) << "w" << std::setw(6) << "rank" << std::setw(8) << "ext1" << std::setw(8) << "ext2"
           << "embedding\n";
        for (const auto& s : t.steps) {
            os << std::setw(5) << s.index << std::setw(44) << to_string(s.input) << std::setw(6) << s.twist << std::setw(5)
               << (s.regularity ? std::to_string(*s.regularity) : "?") << std::setw(6) << s.w << std::setw(6)
               << s.next_rank << std::setw(8) << s.moduli.tangent_Spl_S.str() << std::setw(8)
               << s.moduli.obstruction_Spl_S.str() << to_string(s.syzygy.embedding) << "\n";
        }
        os << to_string(t.status) << (t.reason.empty() ? "" : ": " + t.reason) << "\n";
    });
    if (t.status == HaltKind::Unknown) return blocked_exit(t.reason);
    return 0;
}

int cmd_verify(const Config& c) {
    const auto rows = golden_rows();
    bool all = true;
    Json j = Json::array();
    for (const auto& row : rows) {
        all = all && row.pass;
        j.push_back(Json{{"check", row.name}, {"expected", row.expected}, {"computed", row.computed}, {"pass", row.pass}});
    }
    emit(c, j, [&](std::ostream& os) {
        for (const auto& row : rows)
            os << (row.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(58) << row.name << "expected "
               << std::setw(24) << row.expected << "computed " << row.computed << "\n";
    });
    if (!all) {
        std::cerr << "syzmod: verification failed:";
        for (const auto& row : rows)
            if (!row.pass) std::cerr << " [" << row.name << "]";
        std::cerr << "\n";
        return exit_code(ErrorKind::Internal);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"syzmod: syzygy bundles, cohomology tables and moduli dimensions"};
    app.require_subcommand(1, 1);
    Config c;

    auto common = [&](CLI::App* sub, bool needs_bundle, const char* bundle_flag) {
        sub->add_option("--variety", c.variety, "P2, P3, P4, ... or CY3-quintic");
        sub->add_option("--input", c.input, "JSON file with a custom variety and/or opaque bundles")->check(CLI::ExistingFile);
        sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        auto* b = sub->add_option(bundle_flag, c.bundle, "bundle expression");
        if (needs_bundle) b->required();
    };

    auto* describe = app.add_subcommand("describe", "print the facts known about a bundle expression");
    common(describe, true, "--bundle");
    auto* syzygy = app.add_subcommand("syzygy", "build the syzygy bundle of (F, w) and its verdicts");
    common(syzygy, true, "--bundle");
    syzygy->add_option("-w", c.w, "dimension of W")->required();
    auto* moduli = app.add_subcommand("moduli", "moduli dimensions at the syzygy bundle of (F, w)");
    common(moduli, true, "--bundle");
    moduli->add_option("-w", c.w, "dimension of W")->required();
    auto* tower = app.add_subcommand("tower", "iterate syzygy bundles with twisting between steps");
    common(tower, true, "--start");
    tower->add_option("--policy", c.policy, "full, fixed or max-grassmann");
    tower->add_option("-w", c.w, "w for --policy fixed");
    tower->add_option("--steps", c.steps, "number of steps")->check(CLI::PositiveNumber);
    tower->add_flag("--require-v", c.require_v, "require the V conditions at every step");
    tower->add_option("--scan-cap", c.scan_cap, "bound for the twist and regularity scans")->check(CLI::NonNegativeNumber);
    auto* verify = app.add_subcommand("verify", "reproduce the reference numbers");
    verify->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::Usage);
    }

    try {
        if (describe->parsed()) return cmd_describe(c);
        if (syzygy->parsed()) return cmd_syzygy(c);
        if (moduli->parsed()) return cmd_moduli(c);
        if (tower->parsed()) return cmd_tower(c);
        if (verify->parsed()) return cmd_verify(c);
    } catch (const Error& e) {
        std::cerr << "syzmod: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "syzmod: internal error: " << e.what() << "\n";
        return exit_code(ErrorKind::Internal);
    }
    return exit_code(ErrorKind::Usage);
}
