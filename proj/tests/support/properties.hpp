#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualrw/eval.hpp"
#include "dualrw/strategy.hpp"
#include "dualrw/term.hpp"
#include "support/gen.hpp"

namespace dualrw::testing {

// ---- rule soundness

struct Redex {
    Term term;
    Env env;
};

// A random candidate left-hand side for the named rule; the rule may still
// decline it.
Redex rule_redex(const std::string& rule, TermGen& g);

struct RuleReport {
    std::string rule;
    std::size_t fired = 0;
    std::size_t attempts = 0;
    std::size_t lhs_errors = 0;
    std::vector<std::string> failures;
};

RuleReport check_rule(const std::string& rule, std::size_t want, std::uint64_t seed);

// ---- derivatives

struct SmoothProgram {
    Term fn; // lam p. body, p : real or array k real; body : real
    Value point;
    Value direction;
};

SmoothProgram smooth_program(TermGen& g);
double ad_derivative(const SmoothProgram& p);
long double fd_derivative(const SmoothProgram& p, long double h = 1e-6L);

struct FdReport {
    std::size_t checked = 0;
    std::size_t rejected = 0;
    double worst_relative = 0;
    double worst_absolute = 0;
    std::vector<std::string> failures;
};

// Relative 1e-5 when |d| > 1e-3, else absolute 1e-8.
bool derivative_matches(double ad, long double fd);
FdReport check_ad_against_fd(std::size_t count, std::uint64_t seed);

// ---- strategies

Strategy random_strategy(TermGen& g, int depth);

struct Observation {
    enum class Kind { Failure, Success, Error } kind = Kind::Failure;
    std::optional<Rewritten> result;
    std::string error;

    friend bool operator==(const Observation&, const Observation&) = default;
    std::string str() const;
};

Observation observe(const Strategy& s, const Term& t, RewriteState st, const EngineOptions& opts);

struct LawReport {
    std::size_t pairs = 0;
    std::size_t successes = 0;
    std::size_t one_successes = 0;
    std::vector<std::string> failures;
};

LawReport check_strategy_laws(std::size_t pairs, std::uint64_t seed);

// ---- typing of the transform

struct CommutationReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

CommutationReport check_type_commutation(std::size_t count, std::uint64_t seed);

// ---- substitution

struct SubstCase {
    std::string name;
    Var x;
    Term replacement;
    Term body;
};

std::vector<SubstCase> capture_cases();

// Empty when `subst` agrees with the nameless oracle and keeps the type.
std::optional<std::string> check_subst(const SubstCase& c);

// ---- pipeline

std::vector<Term> pipeline_corpus(std::uint64_t seed);

struct PipelineReport {
    std::size_t terms = 0;
    std::vector<std::string> failures;
};

PipelineReport check_pipeline(const std::vector<Term>& corpus);

} // namespace dualrw::testing
