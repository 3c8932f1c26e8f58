// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dualrw/bench.hpp"
#include "dualrw/eval.hpp"
#include "dualrw/rules.hpp"
#include "support/properties.hpp"

using namespace dualrw;
using namespace dualrw::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome all_ones_gradient() {
    Outcome o;
    std::ostringstream d;
    auto start = Clock::now();
    for (std::uint64_t n : {3, 100, 1000}) {
        Term naive = vector_sum_gradient_program(n);
        auto opt = run(rules::default_pipeline(), naive, rules::default_registry());
        if (!opt) return {false, "pipeline failed at n=" + std::to_string(n)};
        for (const Term* t : {&naive, &*opt}) {
            Value g = eval_closed(*t).value;
            bool ones = g.elements().size() == n;
            for (const auto& v : g.elements()) ones = ones && v.as_real() == 1.0;
            if (!ones) return {false, "gradient not all ones at n=" + std::to_string(n)};
        }
    }
    double secs = seconds_since(start);
    d << "n in {3,100,1000}, both variants, " << secs << "s";
    o.ok = secs < 5.0;
    o.detail = d.str();
    return o;
}

Outcome cost_slopes() {
    std::vector<std::uint64_t> sizes{256, 512, 1024, 2048, 4096};
    auto start = Clock::now();
    BenchReport r = bench_vector_sum(sizes);
    double secs = seconds_since(start);
    std::ostringstream d;
    d << "slope unoptimized " << r.slope_unoptimized << ", optimized " << r.slope_optimized << ", " << secs << "s";
    return {r.slope_unoptimized >= 1.8 && r.slope_optimized <= 1.2 && secs < 60.0, d.str()};
}

Outcome finite_differences() {
    FdReport r = check_ad_against_fd(200, 9001);
    std::ostringstream d;
    d << r.checked << " programs, worst relative " << r.worst_relative << ", worst absolute " << r.worst_absolute;
    if (!r.failures.empty()) d << "; first failure: " << r.failures.front();
    return {r.checked >= 200 && r.failures.empty(), d.str()};
}

Outcome rule_soundness() {
    std::ostringstream d;
    bool ok = true;
    std::size_t rules = 0;
    for (const auto& name : rules::default_registry().names()) {
        RuleReport r = check_rule(name, 100, std::hash<std::string>{}(name) ^ 0x5eed);
        ++rules;
        if (r.fired < 100 || !r.failures.empty()) {
            ok = false;
            d << name << ": fired " << r.fired << ", " << r.failures.size() << " failures; ";
            if (!r.failures.empty()) d << r.failures.front() << "; ";
        }
    }
    d << rules << " rules x 100 redexes";
    return {ok, d.str()};
}

Outcome strategy_laws() {
    LawReport r = check_strategy_laws(200, 9002);
    std::ostringstream d;
    d << r.pairs << " pairs, " << r.successes << " successes";
    if (!r.failures.empty()) d << "; first failure: " << r.failures.front();
    return {r.pairs >= 100 && r.failures.empty(), d.str()};
}

Outcome type_commutation() {
    CommutationReport r = check_type_commutation(300, 9003);
    std::ostringstream d;
    d << r.checked << " terms";
    if (!r.failures.empty()) d << "; first failure: " << r.failures.front();
    return {r.checked >= 200 && r.failures.empty(), d.str()};
}

Outcome capture_avoidance() {
    auto cases = capture_cases();
    std::ostringstream d;
    bool ok = cases.size() >= 10;
    for (const auto& c : cases) {
        if (auto err = check_subst(c)) {
            ok = false;
            d << c.name << ": " << *err << "; ";
        }
    }
    d << cases.size() << " cases";
    return {ok, d.str()};
}

Outcome pipeline_idempotence() {
    auto corpus = pipeline_corpus(9004);
    PipelineReport r = check_pipeline(corpus);
    std::ostringstream d;
    d << r.terms << " terms";
    if (!r.failures.empty()) d << "; first failure: " << r.failures.front();
    return {r.failures.empty() && r.terms == corpus.size(), d.str()};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"vectorsum-gradient-all-ones", all_ones_gradient},
        {"optimized-cost-linear", cost_slopes},
        {"ad-matches-finite-differences", finite_differences},
        {"rules-preserve-meaning", rule_soundness},
        {"strategy-laws", strategy_laws},
        {"dual-type-commutes", type_commutation},
        {"substitution-avoids-capture", capture_avoidance},
        {"pipeline-idempotent", pipeline_idempotence},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.ok;
        std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
