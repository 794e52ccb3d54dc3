// Command-line front end: parse contexts and polynomials, dispatch, print a JSON (or text) report.
// Exit codes: 0 all checks pass, 1 mathematical counterexample, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "suslin/all.hpp"

using namespace suslin;
using nlohmann::json;

namespace {

struct Options {
    std::string ctx;
    std::optional<std::uint64_t> seed;
    std::optional<int> bound;
    std::optional<int> samples;
    std::string format = "json";
};

json read_json(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw usage_error("cannot open " + arg);
    return json::parse(in);
}

ModulusContext load_context(const Options& o) {
    if (o.ctx.empty()) throw usage_error("--ctx is required for this subcommand");
    ModulusContext c = context_from_json(read_json(o.ctx));
    if (!o.bound && !o.seed) return c;
    return ModulusContext(c.field(), c.factors(), c.extra_valuations(), o.bound.value_or(c.degree_bound()),
                          o.seed.value_or(c.seed()));
}

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

int emit(const json& j, const Options& o) {
    if (o.format == "text") render_text(j, "", std::cout);
    else std::cout << j.dump() << "\n";
    const auto status = j.value("status", std::string("pass"));
    return status == "pass" ? 0 : status == "fail" ? 1 : 2;
}

json qn_check(const ModulusContext& ctx, const std::string& text) {
    const TPoly f = parse_cube(text, ctx.field());
    const auto r = is_in_Qn(f, ctx);
    json j{{"check", "qn-check"}, {"status", r ? "pass" : "fail"}, {"input", f.to_string()}, {"n", f.nvars()}};
    if (!r) j["violation"] = {{"condition", r.condition}, {"message", r.message}};
    return j;
}

json rho_cmd(const ModulusContext& ctx, const std::string& text) {
    const TPoly f = parse_cube(text, ctx.field());
    auto [g, m] = rho(f, ctx);
    return {{"check", "rho"}, {"status", "pass"}, {"input", f.to_string()}, {"rho", g.to_string()}, {"exponents", m}};
}

json factor_cmd(const ModulusContext& ctx, const std::string& text) {
    const TPoly f = parse_cube(text, ctx.field(), 1);
    const auto fac = factor_q1(f, ctx);
    json factors = json::array();
    for (const auto& [g, m] : fac.factors) factors.push_back({{"poly", g.to_string()}, {"mult", m}});
    return {{"check", "factor-q1"}, {"status", "pass"}, {"input", f.to_string()}, {"unit", fac.unit.to_string()},
            {"factors", std::move(factors)}};
}

QFraction parse_fraction_args(const ModulusContext& ctx, const std::string& num, const std::string& den) {
    const std::size_t n = std::max({cube_arity(num), den.empty() ? std::size_t{0} : cube_arity(den), std::size_t{1}});
    const TPoly f = parse_cube(num, ctx.field(), n);
    const TPoly g = den.empty() ? TPoly::constant(ctx.field(), n, 1) : parse_cube(den, ctx.field(), n);
    return {f, g};
}

json nqn_cmd(const ModulusContext& ctx, const std::string& num, const std::string& den) {
    const QFraction q = parse_fraction_args(ctx, num, den);
    const auto r = is_in_NQn(q, ctx);
    json j{{"check", "nqn-check"}, {"status", r ? "pass" : "fail"}, {"input", to_json(q)}};
    if (!r) j["violation"] = r.message;
    return j;
}

json boundary_cmd(const ModulusContext& ctx, const std::string& op, const std::string& num, const std::string& den,
                  int j1, const std::string& eps) {
    const QFraction q = parse_fraction_args(ctx, num, den);
    const std::size_t n = q.level();
    json j{{"check", "boundary"}, {"op", op}, {"status", "pass"}, {"input", to_json(q)}};
    if (op == "delta") {
        if (auto r = is_in_NQn(q, ctx); !r) return {{"check", "boundary"}, {"op", op}, {"status", "fail"}, {"violation", r.message}};
        if (n == 1) j["delta"] = to_json(delta1(q, ctx));
        else j["delta"] = to_json(delta_n(q, ctx));
        return j;
    }
    if (j1 < 1 || static_cast<std::size_t>(j1) > n) throw usage_error("--j must lie in [1, n]");
    if (eps != "0" && eps != "inf") throw usage_error("--eps must be 0 or inf");
    const Face e = eps == "0" ? Face::Zero : Face::Infinity;
    const auto jj = static_cast<std::size_t>(j1 - 1);
    if (op == "z-part") j["z_part"] = to_json(z_part(jj, e, q, ctx));
    else if (op == "face") j["face"] = to_json(face(jj, e, ChainElement{{}, q}, ctx));
    else throw usage_error("unknown boundary operation " + op + " (face, delta, z-part)");
    return j;
}

json compose_cmd(const std::string& a, const std::string& b) {
    const Correspondence S = correspondence_from_json(read_json(a)), T = correspondence_from_json(read_json(b));
    return {{"check", "compose"}, {"status", "pass"}, {"composite", to_json(compose(S, T))}};
}

json modulus_cmd(const std::string& a) {
    const Correspondence c = correspondence_from_json(read_json(a));
    const auto r = c.admissibility();
    json j{{"check", "modulus-check"}, {"status", r ? "pass" : "fail"}, {"input", to_json(c)}};
    if (!r) j["violation"] = r.violation;
    return j;
}

json pic_cmd(const ModulusContext& ctx, const std::string& divisor) {
    const PicOracle oracle(ctx);
    json j{{"check", "pic-oracle"}, {"status", "pass"}, {"group", oracle.structure()}, {"torsion_order", oracle.torsion_order()},
           {"invariant_factors", oracle.invariant_factors()}};
    if (!divisor.empty()) {
        const Divisor Z = divisor_from_json(read_json(divisor), ctx.field());
        if (!is_in_Div_CD(Z, ctx)) throw usage_error("divisor meets the modulus");
        const OracleElement t = oracle.theta(Z);
        j["theta"] = {{"degree", t.degree}, {"unit", t.unit.to_string()}};
        if (t == oracle.identity()) j["witness"] = oracle.witness_relation(Z).to_string();
    }
    return j;
}

json verify_cmd(const std::string& which, const Options& o) {
    const std::uint64_t seed0 = o.seed.value_or(0);
    if (which == "mu") return verify_mu(seed0).to_json();
    if (which == "prec") return verify_prec(o.samples.value_or(500), seed0).to_json();
    if (which == "correspondence") return verify_correspondences(o.samples.value_or(40), seed0).to_json();
    const ModulusContext ctx = load_context(o);
    const std::uint64_t seed = o.seed.value_or(ctx.seed());
    if (which == "h0") return verify_h0(ctx, o.bound.value_or(ctx.degree_bound()), o.samples.value_or(100), seed).to_json();
    if (which == "h1") {
        const int n = o.samples.value_or(100);
        return verify_h1(ctx, {n, n / 2}, seed).to_json();
    }
    if (which == "chain") {
        const int n = o.samples.value_or(200);
        return verify_chain(ctx, {3 * n / 2, n, n}, seed).to_json();
    }
    if (which == "monoid") {
        const int n = o.samples.value_or(500);
        return verify_monoid(ctx, {n, 2 * n, 2 * n / 5}, seed).to_json();
    }
    throw usage_error("unknown verification " + which);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Suslin homology with modulus for P^1 over a prime field"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--ctx", o.ctx, "modulus context: JSON file or inline JSON");
        sub->add_option("--seed", o.seed, "seed for all sampling");
        sub->add_option("--bound", o.bound, "degree bound");
        sub->add_option("--samples", o.samples, "number of samples");
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    std::string poly, num, den, op, eps = "0", file_a, file_b, divisor, which;
    int j = 1;
    auto* qn = app.add_subcommand("qn-check", "test membership in Q_n");
    qn->add_option("poly", poly)->required();
    auto* rh = app.add_subcommand("rho", "strip cube monomials");
    rh->add_option("poly", poly)->required();
    auto* fq = app.add_subcommand("factor-q1", "factor an element of Q_1");
    fq->add_option("poly", poly)->required();
    auto* bd = app.add_subcommand("boundary", "face, delta or z-part of f/g");
    bd->add_option("op", op, "face | delta | z-part")->required()->check(CLI::IsMember({"face", "delta", "z-part"}));
    bd->add_option("num", num)->required();
    bd->add_option("den", den);
    bd->add_option("--j", j, "face variable (1-based)");
    bd->add_option("--eps", eps, "0 or inf")->check(CLI::IsMember({"0", "inf"}));
    auto* nq = app.add_subcommand("nqn-check", "test membership of f/g in NQ_n");
    nq->add_option("num", num)->required();
    nq->add_option("den", den);
    auto* co = app.add_subcommand("compose", "compose correspondences (first argument applied first)");
    co->add_option("first", file_a)->required();
    co->add_option("second", file_b)->required();
    auto* mc = app.add_subcommand("modulus-check", "admissibility of a correspondence");
    mc->add_option("correspondence", file_a)->required();
    auto* po = app.add_subcommand("pic-oracle", "relative Picard group of the context");
    po->add_option("--divisor", divisor, "divisor JSON (file or inline) to evaluate theta on");
    auto* ve = app.add_subcommand("verify", "run a verification");
    ve->add_option("which", which)->required()->check(
        CLI::IsMember({"h0", "h1", "chain", "mu", "monoid", "prec", "correspondence"}));
    for (auto* sub : {qn, rh, fq, bd, nq, co, mc, po, ve}) common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json out;
        if (*qn) out = qn_check(load_context(o), poly);
        else if (*rh) out = rho_cmd(load_context(o), poly);
        else if (*fq) out = factor_cmd(load_context(o), poly);
        else if (*bd) out = boundary_cmd(load_context(o), op, num, den, j, eps);
        else if (*nq) out = nqn_cmd(load_context(o), num, den);
        else if (*co) out = compose_cmd(file_a, file_b);
        else if (*mc) out = modulus_cmd(file_a);
        else if (*po) out = pic_cmd(load_context(o), divisor);
        else out = verify_cmd(which, o);
        return emit(out, o);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const DegreeBoundExceeded& e) {
        std::cerr << "error: size limit: " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        return emit({{"status", "fail"}, {"error", e.what()}}, o);
    }
}
