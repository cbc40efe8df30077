// fgpit — identity testing and sparse reconstruction in free group algebras.
//
// Exit codes: 0 identically zero / success, 1 certified nonzero,
// 2 usage or parse error, 3 infeasible for the given guards or field.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgpit/errors.hpp"
#include "fgpit/expression.hpp"
#include "fgpit/interpolate.hpp"
#include "fgpit/pit.hpp"

using fgpit::AlgebraElement;
using fgpit::BlackBox;
using fgpit::EncodingMode;
using fgpit::Expression;
using fgpit::Field;
using fgpit::FieldPtr;
using fgpit::Verdict;
using fgpit::VerdictKind;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;
constexpr std::int64_t kDefaultDegreeGuard = 64;
constexpr std::int64_t kDefaultSparsityGuard = 4096;
constexpr std::int64_t kDegreeModeLimit = 64;

struct Options {
    std::string expr;
    std::string file;
    int n = 0;
    std::string field_spec = "2305843009213693951";
    std::int64_t degree = -1;  // -1: derive from the expression
    std::int64_t sparsity = 0;
    int trials = 5;
    std::uint64_t seed = kDefaultSeed;
    bool json = false;
    std::int64_t degree_guard = kDefaultDegreeGuard;
    std::int64_t sparsity_guard = kDefaultSparsityGuard;
};

void add_expression_flags(CLI::App* cmd, Options& o) {
    auto* expr = cmd->add_option("--expr", o.expr, "expression text");
    auto* file = cmd->add_option("--file", o.file, "file with one expression ('#' comments)");
    expr->excludes(file);
    cmd->add_option("--n", o.n, "alphabet size (generators x1..xn)")->required();
    cmd->add_option("--field", o.field_spec, "field: \"Q\", \"p\" or \"p^k\"")
        ->capture_default_str();
    cmd->add_flag("--json", o.json, "emit a JSON report");
}

std::string load_expression_text(const Options& o) {
    if (!o.expr.empty()) return o.expr;
    if (o.file.empty()) throw std::invalid_argument("one of --expr or --file is required");
    std::ifstream in(o.file);
    if (!in) throw std::invalid_argument("cannot open " + o.file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Expression parse_expression(const Options& o, const FieldPtr& field) {
    return Expression::parse(load_expression_text(o), o.n, field);
}

std::int64_t effective_degree(const Options& o, const Expression& e) {
    return o.degree >= 0 ? o.degree : e.syntactic_degree_bound();
}

ordered_json witness_json(const fgpit::Witness& w) {
    ordered_json j;
    j["mode"] = w.mode == EncodingMode::Degree ? "degree" : "sparsity";
    j["dim"] = w.dim;
    j["level"] = w.level;
    j["trial"] = w.trial_index;
    j["probe"] = !w.assignment.has_value();
    j["entry"] = w.entry.str();
    if (w.assignment.has_value()) j["assignment_field"] = w.assignment->field->str();
    return j;
}

int report_verdict(const Options& o, const std::string& command, std::int64_t degree,
                   const Verdict& v) {
    mpq_class bound = v.per_trial_error_bound;
    if (o.json) {
        ordered_json j;
        j["command"] = command;
        j["field"] = o.field_spec;
        j["n"] = o.n;
        j["degree_bound"] = degree;
        if (o.sparsity > 0) j["sparsity_bound"] = o.sparsity;
        j["trials"] = o.trials;
        j["seed"] = o.seed;
        j["verdict"] = v.kind == VerdictKind::Zero ? "Zero" : "NonZero";
        j["trials_used"] = v.trials_used;
        j["per_trial_error_bound"] = bound.get_str();
        if (v.witness) j["witness"] = witness_json(*v.witness);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "verdict: " << (v.kind == VerdictKind::Zero ? "Zero" : "NonZero") << "\n";
        std::cout << "trials-used: " << v.trials_used << "\n";
        std::cout << "per-trial-error-bound: " << bound.get_str() << "\n";
        std::cout << "seed: " << o.seed << "\n";
        if (v.witness) {
            const auto& w = *v.witness;
            std::cout << "witness: mode=" << (w.mode == EncodingMode::Degree ? "degree" : "sparsity")
                      << " dim=" << w.dim << " level=" << w.level << " trial=" << w.trial_index
                      << (w.assignment ? "" : " probe") << "\n";
            std::cout << "witness-entry: " << w.entry.str() << "\n";
        }
    }
    return v.kind == VerdictKind::Zero ? 0 : 1;
}

int run_check(const Options& o) {
    FieldPtr field = Field::parse(o.field_spec);
    Expression e = parse_expression(o, field);
    std::int64_t degree = effective_degree(o, e);
    if (degree > kDegreeModeLimit)
        throw std::invalid_argument("degree bound " + std::to_string(degree) +
                                    " exceeds the degree-mode limit of 64; use check-sparse");
    Verdict v = fgpit::check_degree_mode(BlackBox::from_expression(e), o.n, degree, field, o.trials,
                                         o.seed);
    return report_verdict(o, "check", degree, v);
}

int run_check_sparse(const Options& o) {
    FieldPtr field = Field::parse(o.field_spec);
    Expression e = parse_expression(o, field);
    std::int64_t degree = effective_degree(o, e);
    Verdict v = fgpit::check_sparse_mode(BlackBox::from_expression(e), o.n, degree, o.sparsity, field,
                                         o.trials, o.seed);
    return report_verdict(o, "check-sparse", degree, v);
}

int run_reconstruct(const Options& o) {
    FieldPtr field = Field::parse(o.field_spec);
    Expression e = parse_expression(o, field);
    std::int64_t degree = effective_degree(o, e);
    if (degree > 1'000'000)
        throw std::invalid_argument("reconstruction degree bound too large: " +
                                    std::to_string(degree));
    AlgebraElement r = fgpit::reconstruct(BlackBox::from_expression(e), o.n,
                                          static_cast<int>(degree), o.sparsity, field);
    if (o.json) {
        ordered_json j;
        j["command"] = "reconstruct";
        j["field"] = o.field_spec;
        j["n"] = o.n;
        j["degree_bound"] = degree;
        j["sparsity_bound"] = o.sparsity;
        j["element"] = ordered_json::parse(r.to_json());
        j["degree"] = r.degree();
        j["sparsity"] = r.sparsity();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << r.to_json() << "\n";
    }
    return 0;
}

int run_expand(const Options& o) {
    FieldPtr field = Field::parse(o.field_spec);
    Expression e = parse_expression(o, field);
    AlgebraElement r = e.expand(o.degree_guard, o.sparsity_guard);
    if (o.json) {
        ordered_json j;
        j["command"] = "expand";
        j["field"] = o.field_spec;
        j["n"] = o.n;
        j["degree_guard"] = o.degree_guard;
        j["sparsity_guard"] = o.sparsity_guard;
        j["element"] = ordered_json::parse(r.to_json());
        j["degree"] = r.degree();
        j["sparsity"] = r.sparsity();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << r.to_json() << "\n";
    }
    return 0;
}

int run_encode_dump(const Options& o) {
    FieldPtr field = Field::parse(o.field_spec);
    const bool sparse = o.sparsity > 0;
    fgpit::Rng rng(o.seed);
    ordered_json j;
    j["command"] = "encode-dump";
    j["field"] = field->str();
    j["n"] = o.n;
    j["seed"] = o.seed;

    auto dump_matrices = [&](const fgpit::MatrixAssignment& mats, const fgpit::Assignment& a) {
        j["assignment_field"] = a.field->str();
        ordered_json alphas = ordered_json::array();
        for (const auto& s : a.alphas) alphas.push_back(s.str());
        j["alphas"] = alphas;
        ordered_json gens = ordered_json::array();
        for (int i = 1; i <= o.n; ++i) {
            ordered_json g;
            g["generator"] = i;
            ordered_json m = ordered_json::array(), minv = ordered_json::array();
            for (std::size_t r = 0; r < mats.dim(); ++r)
                for (std::size_t c = 0; c < mats.dim(); ++c) {
                    m.push_back(mats.matrix(i).at(r, c).str());
                    minv.push_back(mats.inverse(i).at(r, c).str());
                }
            g["matrix"] = std::move(m);
            g["inverse"] = std::move(minv);
            gens.push_back(std::move(g));
        }
        j["generators"] = std::move(gens);
    };

    if (sparse) {
        int blocks = fgpit::sparsity_block_count(o.sparsity);
        fgpit::Assignment a =
            fgpit::random_assignment(field, o.n, blocks, EncodingMode::Sparsity, rng);
        fgpit::SparsityEncoding enc = fgpit::build_sparsity_encoding(o.n, o.sparsity, a);
        j["mode"] = "sparsity";
        j["sparsity_bound"] = o.sparsity;
        j["dim"] = enc.dim();
        dump_matrices(enc.matrices, a);
    } else {
        if (o.degree < 1) throw std::invalid_argument("encode-dump needs --degree or --sparsity");
        if (o.degree > 100'000)
            throw std::invalid_argument("encode-dump degree too large: " + std::to_string(o.degree));
        fgpit::Assignment a = fgpit::random_assignment(field, o.n, static_cast<int>(o.degree),
                                                       EncodingMode::Degree, rng);
        fgpit::DegreeEncoding enc = fgpit::build_degree_encoding(o.n, static_cast<int>(o.degree), a);
        j["mode"] = "degree";
        j["degree"] = o.degree;
        j["dim"] = enc.dim();
        dump_matrices(enc.matrices, a);
    }
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"identity testing and sparse reconstruction in free group algebras"};
    app.require_subcommand(1);
    Options o;

    CLI::App* check = app.add_subcommand(
        "check", "randomized identity test, degree mode (matrices of dimension 2*degree)");
    add_expression_flags(check, o);
    check->add_option("--degree", o.degree, "degree bound (default: syntactic bound)");
    check->add_option("--trials", o.trials, "independent trials")->capture_default_str();
    check->add_option("--seed", o.seed, "master seed")->capture_default_str();

    CLI::App* sparse = app.add_subcommand(
        "check-sparse", "randomized identity test, sparsity mode (dimension 4*(log2(s)+1))");
    add_expression_flags(sparse, o);
    sparse->add_option("--degree", o.degree, "degree bound (default: syntactic bound)");
    sparse->add_option("--sparsity", o.sparsity, "sparsity bound")->required()
        ->check(CLI::PositiveNumber);
    sparse->add_option("--trials", o.trials, "independent trials")->capture_default_str();
    sparse->add_option("--seed", o.seed, "master seed")->capture_default_str();

    CLI::App* rec = app.add_subcommand("reconstruct",
                                       "deterministic exact reconstruction of a sparse expression");
    add_expression_flags(rec, o);
    rec->add_option("--degree", o.degree, "degree bound (default: syntactic bound)");
    rec->add_option("--sparsity", o.sparsity, "sparsity bound")->required()
        ->check(CLI::PositiveNumber);

    CLI::App* expand = app.add_subcommand("expand", "exact symbolic expansion (the oracle)");
    add_expression_flags(expand, o);
    expand->add_option("--degree-guard", o.degree_guard, "abort above this degree")
        ->capture_default_str();
    expand->add_option("--sparsity-guard", o.sparsity_guard, "abort above this term count")
        ->capture_default_str();

    CLI::App* dump = app.add_subcommand("encode-dump", "emit encoding matrices as JSON");
    dump->add_option("--n", o.n, "alphabet size")->required();
    dump->add_option("--field", o.field_spec, "field: \"Q\", \"p\" or \"p^k\"")
        ->capture_default_str();
    dump->add_option("--degree", o.degree, "degree-mode encoding of this degree");
    dump->add_option("--sparsity", o.sparsity, "sparsity-mode encoding for this bound");
    dump->add_option("--seed", o.seed, "master seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // 0 covers --help
    }

    try {
        if (app.got_subcommand(check)) return run_check(o);
        if (app.got_subcommand(sparse)) return run_check_sparse(o);
        if (app.got_subcommand(rec)) return run_reconstruct(o);
        if (app.got_subcommand(expand)) return run_expand(o);
        if (app.got_subcommand(dump)) return run_encode_dump(o);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const fgpit::GuardExceeded& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const fgpit::FieldTooSmall& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const fgpit::SparsityExceeded& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const fgpit::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
