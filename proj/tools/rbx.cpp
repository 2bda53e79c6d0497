// rbx: exact calculator for commutative Rota-Baxter algebras over Q.
//
// Subcommands bind the library operations: products and operator application
// in the free algebra and in localized carriers, the Rota-Baxter axiom
// checker, rewriting-based normalization and equality over presented
// quotients, the localization cross-check and the localization/tensor
// compatibility instance.
//
// Exit codes: 0 success, 1 verification failed, 2 usage error, 3 guard
// exceeded.

#include <CLI11.hpp>

#include "rbx/errors.hpp"
#include "rbx/localize.hpp"
#include "rbx/parser.hpp"
#include "rbx/presentation.hpp"
#include "rbx/printer.hpp"
#include "rbx/sampling.hpp"
#include "rbx/targets.hpp"

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rbx;

struct SessionOptions {
    std::string vars_csv;
    std::string localize_spec;
    std::string op_spec;
    std::string weight_text = "0";
    std::string variant_text;
    bool json = false;
    bool trace = false;
    int max_word_len = 16;
    long long max_steps = 100000;
};

void add_session_flags(CLI::App* cmd, SessionOptions& s) {
    cmd->add_option("--vars", s.vars_csv, "Comma-separated variable names");
    cmd->add_option("--localize", s.localize_spec,
                    "Denominator variable, optionally var:polynomial (default s = var)");
    cmd->add_option("--op", s.op_spec, "Base operator: zero|id|negid|integral[:var]");
    cmd->add_option("--weight", s.weight_text, "Weight as a rational p/q (default 0)");
    cmd->add_option("--variant", s.variant_text, "Localization variant: general|weight-zero|zero-op");
    cmd->add_flag("--json", s.json, "Emit the stable JSON encoding");
    cmd->add_flag("--trace", s.trace, "Emit rewrite traces on stderr");
    cmd->add_option("--max-word-len", s.max_word_len, "Word-length guard (default 16)");
    cmd->add_option("--max-steps", s.max_steps, "Rewrite-step guard (default 100000)");
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

struct Session {
    AlgebraDescriptor alg;
    Scalar weight;
    std::optional<BaseOperator> op;
    std::optional<LocalizationVariant> variant;
    Guards guards;
    bool json = false;
    bool trace = false;

    bool localized() const { return alg.has_denominator(); }

    LocalizationContext context() const {
        if (!localized())
            throw DomainError("this command needs --localize");
        if (!op)
            throw DomainError("this command needs --op");
        return LocalizationContext(alg, weight, *variant, *op);
    }

    Presentation presentation() const {
        if (!localized())
            throw DomainError("this command needs --localize");
        if (!op)
            throw DomainError("this command needs --op");
        return Presentation::localization(alg, *op, weight);
    }
};

BaseOperator parse_operator(const std::string& spec, const Scalar& weight, const AlgebraDescriptor& alg) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind == "zero")
        return BaseOperator::zero(weight);
    if (kind == "id")
        return BaseOperator::identity();
    if (kind == "negid")
        return BaseOperator::neg_identity();
    if (kind == "integral") {
        int var = 0;
        if (colon != std::string::npos) {
            const std::string name = spec.substr(colon + 1);
            var = alg.var_index(name);
            if (var < 0)
                throw DomainError("unknown integration variable '" + name + "'");
        }
        return BaseOperator::integral(var);
    }
    throw DomainError("unknown operator '" + spec + "' (expected zero|id|negid|integral)");
}

AlgebraDescriptor build_descriptor(const std::string& vars_csv, const std::string& localize_spec) {
    std::vector<std::string> vars = split_csv(vars_csv);
    if (localize_spec.empty()) {
        if (vars.empty())
            throw DomainError("no variables given (use --vars)");
        return AlgebraDescriptor(std::move(vars));
    }
    const auto colon = localize_spec.find(':');
    const std::string var_name = localize_spec.substr(0, colon);
    if (vars.empty())
        vars.push_back(var_name);
    AlgebraDescriptor plain(vars);
    const int var = plain.var_index(var_name);
    if (var < 0)
        throw DomainError("denominator variable '" + var_name + "' not among --vars");
    UnivariatePoly s = UnivariatePoly::monomial(1, 1);
    if (colon != std::string::npos) {
        const RBExpression e = parse_expression(localize_spec.substr(colon + 1), plain);
        s = univariate_from_element(evaluate_plain(e), var);
        if (s.degree() < 1)
            throw DomainError("denominator polynomial must be nonconstant");
    }
    return AlgebraDescriptor(std::move(vars), var, std::move(s));
}

Session build_session(const SessionOptions& o) {
    AlgebraDescriptor alg = build_descriptor(o.vars_csv, o.localize_spec);
    const Scalar weight = Scalar::from_string(o.weight_text);
    std::optional<BaseOperator> op;
    if (!o.op_spec.empty())
        op = parse_operator(o.op_spec, weight, alg);

    std::optional<LocalizationVariant> variant;
    if (!o.variant_text.empty()) {
        if (o.variant_text == "general")
            variant = LocalizationVariant::general_weight;
        else if (o.variant_text == "weight-zero")
            variant = LocalizationVariant::weight_zero;
        else if (o.variant_text == "zero-op")
            variant = LocalizationVariant::zero_operator_quotient;
        else
            throw DomainError("unknown variant '" + o.variant_text + "'");
    } else if (alg.has_denominator()) {
        variant = weight.is_zero() ? LocalizationVariant::weight_zero
                                   : LocalizationVariant::general_weight;
    }

    Guards guards;
    guards.max_word_len = o.max_word_len;
    guards.max_steps = o.max_steps;
    Session s{std::move(alg), weight, std::move(op), variant, guards, o.json, o.trace};
    return s;
}

void print_localized(const Session& s, const LocalizedElement& u) {
    std::cout << "variant=" << variant_name(u.context().variant())
              << " weight=" << u.context().weight().str_ratio() << "\n";
    std::cout << (s.json ? to_json_text(u) : to_text(u)) << "\n";
}

void print_shuffle(const Session& s, const ShuffleElement& u) {
    std::cout << (s.json ? to_json_text(u) : to_text(u)) << "\n";
}

int cmd_mul(const Session& s, const std::string& a_text, const std::string& b_text) {
    const RBExpression ea = parse_expression(a_text, s.alg);
    const RBExpression eb = parse_expression(b_text, s.alg);
    if (s.localized()) {
        const LocalizedRBAlgebra target(s.context(), s.guards);
        print_localized(s, target.mul(evaluate_expression(target, ea), evaluate_expression(target, eb)));
    } else {
        const FreeRBAlgebra target(s.alg, s.weight, s.guards);
        print_shuffle(s, target.mul(evaluate_expression(target, ea), evaluate_expression(target, eb)));
    }
    return 0;
}

int cmd_applyp(const Session& s, const std::string& text) {
    const RBExpression e = parse_expression(text, s.alg);
    if (s.localized()) {
        const LocalizedRBAlgebra target(s.context(), s.guards);
        print_localized(s, target.apply_p(evaluate_expression(target, e)));
    } else {
        const FreeRBAlgebra target(s.alg, s.weight, s.guards);
        print_shuffle(s, target.apply_p(evaluate_expression(target, e)));
    }
    return 0;
}

int cmd_localize(const Session& s, const std::string& text) {
    const LocalizedRBAlgebra target(s.context(), s.guards);
    const RBExpression e = parse_expression(text, s.alg);
    print_localized(s, evaluate_expression(target, e));
    return 0;
}

template <typename Target, typename Sampler>
int run_rbcheck(const Target& target, const std::vector<std::string>& inputs, const Session& s,
                int random_count, std::uint64_t seed, Sampler&& sample) {
    if (!inputs.empty()) {
        const RBExpression ex = parse_expression(inputs.at(0), s.alg);
        const RBExpression ey = parse_expression(inputs.at(1), s.alg);
        const bool ok = verify_rb_axiom(target, evaluate_expression(target, ex),
                                        evaluate_expression(target, ey));
        std::cout << (ok ? "rb-axiom: verified" : "rb-axiom: FAILED") << "\n";
        return ok ? 0 : 1;
    }
    Rng rng(seed);
    for (int i = 0; i < random_count; ++i) {
        const auto x = sample(rng);
        const auto y = sample(rng);
        if (!verify_rb_axiom(target, x, y)) {
            std::cout << "rb-axiom: FAILED at sample " << i << "\n";
            return 1;
        }
    }
    std::cout << "rb-axiom: " << random_count << "/" << random_count << " pairs verified\n";
    return 0;
}

int cmd_rbcheck(const Session& s, const std::vector<std::string>& inputs, int random_count,
                std::uint64_t seed) {
    if (inputs.empty() && random_count <= 0)
        throw DomainError("rbcheck needs two expressions or --random N");
    if (!inputs.empty() && inputs.size() != 2)
        throw DomainError("rbcheck needs exactly two expressions");
    SampleParams params;
    if (s.localized()) {
        const LocalizedRBAlgebra target(s.context(), s.guards);
        return run_rbcheck(target, inputs, s, random_count, seed, [&](Rng& rng) {
            return sample_localized_element(rng, target.context(), 2, 3, params);
        });
    }
    if (s.op) {
        const BaseRBAlgebra target(s.alg, *s.op);
        return run_rbcheck(target, inputs, s, random_count, seed, [&](Rng& rng) {
            return sample_polynomial_element(rng, s.alg, params);
        });
    }
    const FreeRBAlgebra target(s.alg, s.weight, s.guards);
    return run_rbcheck(target, inputs, s, random_count, seed, [&](Rng& rng) {
        return sample_shuffle_element(rng, s.alg, s.weight, 2, 3, params);
    });
}

int run_normalize(const Session& s, const Presentation& pres, const std::string& text) {
    const RBExpression e = parse_expression(text, pres.carrier());
    RewriteTrace trace;
    const auto flush_trace = [&] {
        for (const auto& line : trace.lines)
            std::cerr << line << "\n";
    };
    try {
        NormalForm nf = normalize(e, pres, ReductionStrategy::innermost, s.guards,
                                  s.trace ? &trace : nullptr);
        flush_trace();
        std::cout << (s.json ? to_json_text(nf.element) : to_text(nf.element)) << "\n";
    } catch (const GuardError&) {
        flush_trace(); // partial trace up to the guard trip
        throw;
    }
    return 0;
}

int run_equal(const Session& s, const Presentation& pres, const std::string& a_text,
              const std::string& b_text) {
    const RBExpression ea = parse_expression(a_text, pres.carrier());
    const RBExpression eb = parse_expression(b_text, pres.carrier());
    const EqualityVerdict v = equal_mod_ideal(ea, eb, pres, s.guards);
    std::cout << (v.proven() ? "ProvenEqual" : "NotProven") << "\n";
    std::cout << "lhs: " << to_text(v.lhs.element) << "\n";
    std::cout << "rhs: " << to_text(v.rhs.element) << "\n";
    return v.proven() ? 0 : 1;
}

struct TensorOptions {
    std::string r0_vars;
    std::string r1_vars;
    std::string r1_localize;
    std::string r1_op;
    std::string r2_vars;
    std::string r2_op;
};

Presentation build_tensor(const TensorOptions& t, const Scalar& weight) {
    AlgebraDescriptor left_alg = build_descriptor(t.r1_vars, t.r1_localize);
    AlgebraDescriptor right_alg = build_descriptor(t.r2_vars, "");
    if (t.r1_op.empty() || t.r2_op.empty())
        throw DomainError("tensor needs --r1-op and --r2-op");
    TensorComponent left{left_alg, parse_operator(t.r1_op, weight, left_alg)};
    TensorComponent right{right_alg, parse_operator(t.r2_op, weight, right_alg)};
    return Presentation::tensor_product(split_csv(t.r0_vars), std::move(left), std::move(right), weight);
}

int cmd_crosscheck(const Session& s, const std::vector<std::string>& inputs, int random_count,
                   std::uint64_t seed) {
    const LocalizationContext ctx = s.context();
    const LocalizedRBAlgebra target(ctx, s.guards);
    if (!inputs.empty()) {
        const LocalizedElement u =
            evaluate_expression(target, parse_expression(inputs.front(), s.alg));
        const EqualityVerdict v = cross_check_localization(u, s.guards);
        std::cout << (v.proven() ? "ProvenEqual" : "NotProven") << "\n";
        return v.proven() ? 0 : 1;
    }
    if (random_count <= 0)
        throw DomainError("crosscheck needs an expression or --random N");
    Rng rng(seed);
    SampleParams params;
    for (int i = 0; i < random_count; ++i) {
        const LocalizedElement u = sample_localized_element(rng, ctx, 2, 3, params);
        if (!cross_check_localization(u, s.guards).proven()) {
            std::cout << "crosscheck: FAILED at sample " << i << "\n";
            return 1;
        }
    }
    std::cout << "crosscheck: " << random_count << "/" << random_count << " confirmed\n";
    return 0;
}

int cmd_lemma44(int samples, std::uint64_t seed, const Guards& guards) {
    const Lemma44Report report = lemma44_check(samples, samples, seed, guards);
    std::cout << "lemma44: g.h identity on " << report.element_samples << " localized samples\n";
    std::cout << "lemma44: h.g proven equal on " << report.expression_samples << " expressions\n";
    for (const auto& f : report.failures)
        std::cerr << "lemma44: " << f << "\n";
    std::cout << (report.ok() ? "lemma44: OK" : "lemma44: FAILED") << "\n";
    return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rbx: exact Rota-Baxter algebra calculator over Q"};
    app.require_subcommand(1);

    std::function<int()> action;

    // mul
    auto mul_opts = std::make_shared<SessionOptions>();
    auto mul_inputs = std::make_shared<std::vector<std::string>>();
    auto* mul_cmd = app.add_subcommand("mul", "Product of two elements");
    add_session_flags(mul_cmd, *mul_opts);
    mul_cmd->add_option("inputs", *mul_inputs, "two expressions")->expected(2);
    mul_cmd->callback([&action, mul_opts, mul_inputs] {
        action = [=] { return cmd_mul(build_session(*mul_opts), mul_inputs->at(0), mul_inputs->at(1)); };
    });

    // applyp
    auto applyp_opts = std::make_shared<SessionOptions>();
    auto applyp_input = std::make_shared<std::string>();
    auto* applyp_cmd = app.add_subcommand("applyp", "Apply the Rota-Baxter operator");
    add_session_flags(applyp_cmd, *applyp_opts);
    applyp_cmd->add_option("input", *applyp_input, "expression")->required();
    applyp_cmd->callback([&action, applyp_opts, applyp_input] {
        action = [=] { return cmd_applyp(build_session(*applyp_opts), *applyp_input); };
    });

    // rbcheck
    auto rbc_opts = std::make_shared<SessionOptions>();
    auto rbc_inputs = std::make_shared<std::vector<std::string>>();
    auto rbc_random = std::make_shared<int>(0);
    auto rbc_seed = std::make_shared<std::uint64_t>(1);
    auto* rbc_cmd = app.add_subcommand("rbcheck", "Verify the Rota-Baxter identity");
    add_session_flags(rbc_cmd, *rbc_opts);
    rbc_cmd->add_option("inputs", *rbc_inputs, "two expressions")->expected(0, 2);
    rbc_cmd->add_option("--random", *rbc_random, "number of sampled pairs");
    rbc_cmd->add_option("--seed", *rbc_seed, "sampling seed (default 1)");
    rbc_cmd->callback([&action, rbc_opts, rbc_inputs, rbc_random, rbc_seed] {
        action = [=] {
            return cmd_rbcheck(build_session(*rbc_opts), *rbc_inputs, *rbc_random, *rbc_seed);
        };
    });

    // localize
    auto loc_opts = std::make_shared<SessionOptions>();
    auto loc_input = std::make_shared<std::string>();
    auto* loc_cmd = app.add_subcommand("localize", "Evaluate an expression in the localized carrier");
    add_session_flags(loc_cmd, *loc_opts);
    loc_cmd->add_option("input", *loc_input, "expression")->required();
    loc_cmd->callback([&action, loc_opts, loc_input] {
        action = [=] { return cmd_localize(build_session(*loc_opts), *loc_input); };
    });

    // normalize
    auto norm_opts = std::make_shared<SessionOptions>();
    auto norm_input = std::make_shared<std::string>();
    auto* norm_cmd = app.add_subcommand("normalize", "Normal form under the localization presentation");
    add_session_flags(norm_cmd, *norm_opts);
    norm_cmd->add_option("input", *norm_input, "expression")->required();
    norm_cmd->callback([&action, norm_opts, norm_input] {
        action = [=] {
            const Session s = build_session(*norm_opts);
            return run_normalize(s, s.presentation(), *norm_input);
        };
    });

    // equal
    auto eq_opts = std::make_shared<SessionOptions>();
    auto eq_inputs = std::make_shared<std::vector<std::string>>();
    auto* eq_cmd = app.add_subcommand("equal", "Equality semi-decision under the presentation");
    add_session_flags(eq_cmd, *eq_opts);
    eq_cmd->add_option("inputs", *eq_inputs, "two expressions")->expected(2);
    eq_cmd->callback([&action, eq_opts, eq_inputs] {
        action = [=] {
            const Session s = build_session(*eq_opts);
            return run_equal(s, s.presentation(), eq_inputs->at(0), eq_inputs->at(1));
        };
    });

    // tensor
    auto ten_opts = std::make_shared<SessionOptions>();
    auto ten_tensor = std::make_shared<TensorOptions>();
    auto ten_inputs = std::make_shared<std::vector<std::string>>();
    auto* ten_cmd = app.add_subcommand("tensor", "Normalize or compare under a tensor-product presentation");
    add_session_flags(ten_cmd, *ten_opts);
    ten_cmd->add_option("--r0-vars", ten_tensor->r0_vars, "shared variables (may be empty)");
    ten_cmd->add_option("--r1-vars", ten_tensor->r1_vars, "left component variables");
    ten_cmd->add_option("--r1-localize", ten_tensor->r1_localize, "left component denominator");
    ten_cmd->add_option("--r1-op", ten_tensor->r1_op, "left component operator");
    ten_cmd->add_option("--r2-vars", ten_tensor->r2_vars, "right component variables");
    ten_cmd->add_option("--r2-op", ten_tensor->r2_op, "right component operator");
    ten_cmd->add_option("inputs", *ten_inputs, "one expression (normalize) or two (equal)")
        ->expected(1, 2);
    ten_cmd->callback([&action, ten_opts, ten_tensor, ten_inputs] {
        action = [=] {
            SessionOptions opts = *ten_opts;
            const Scalar weight = Scalar::from_string(opts.weight_text);
            const Presentation pres = build_tensor(*ten_tensor, weight);
            Session s{pres.carrier(), weight, std::nullopt, std::nullopt,
                      Guards{opts.max_word_len, opts.max_steps}, opts.json, opts.trace};
            if (ten_inputs->size() == 1)
                return run_normalize(s, pres, ten_inputs->at(0));
            return run_equal(s, pres, ten_inputs->at(0), ten_inputs->at(1));
        };
    });

    // crosscheck
    auto cc_opts = std::make_shared<SessionOptions>();
    auto cc_inputs = std::make_shared<std::vector<std::string>>();
    auto cc_random = std::make_shared<int>(0);
    auto cc_seed = std::make_shared<std::uint64_t>(1);
    auto* cc_cmd = app.add_subcommand("crosscheck", "Carrier vs presentation cross-check");
    add_session_flags(cc_cmd, *cc_opts);
    cc_cmd->add_option("input", *cc_inputs, "expression")->expected(0, 1);
    cc_cmd->add_option("--random", *cc_random, "number of sampled elements");
    cc_cmd->add_option("--seed", *cc_seed, "sampling seed (default 1)");
    cc_cmd->callback([&action, cc_opts, cc_inputs, cc_random, cc_seed] {
        action = [=] {
            return cmd_crosscheck(build_session(*cc_opts), *cc_inputs, *cc_random, *cc_seed);
        };
    });

    // lemma44
    auto l44_samples = std::make_shared<int>(25);
    auto l44_seed = std::make_shared<std::uint64_t>(1);
    auto l44_opts = std::make_shared<SessionOptions>();
    auto* l44_cmd = app.add_subcommand("lemma44", "Localization/tensor compatibility instance");
    l44_cmd->add_option("--samples", *l44_samples, "samples per direction (default 25)");
    l44_cmd->add_option("--seed", *l44_seed, "sampling seed (default 1)");
    l44_cmd->add_option("--max-word-len", l44_opts->max_word_len, "Word-length guard");
    l44_cmd->add_option("--max-steps", l44_opts->max_steps, "Rewrite-step guard");
    l44_cmd->callback([&action, l44_samples, l44_seed, l44_opts] {
        action = [=] {
            return cmd_lemma44(*l44_samples, *l44_seed,
                               Guards{l44_opts->max_word_len, l44_opts->max_steps});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
