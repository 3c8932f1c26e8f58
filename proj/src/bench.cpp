#include "dualrw/bench.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "dualrw/autodiff.hpp"
#include "dualrw/rules.hpp"

namespace dualrw {

namespace {

Term vector_sum_body(std::uint64_t n, const Term& v) {
    Term acc = Term::var("acc", Type::real());
    Term j = Term::var("j", Type::fin(n));
    Term step = Term::lam("acc", Type::real(), Term::lam("j", Type::fin(n), Term::add(acc, Term::geti(n, v, j))));
    return Term::ifold(n, step, Term::const_real(0.0));
}

Term filled(std::uint64_t n, double value) {
    return Term::build(n, Term::lam("k", Type::fin(n), Term::const_real(value)));
}

void check_all_ones(const Value& grad, std::uint64_t n, const char* variant) {
    auto elems = grad.elements();
    bool ok = elems.size() == n;
    for (const Value& e : elems) ok = ok && e.as_real() == 1.0;
    if (!ok)
        throw std::runtime_error(std::string("vectorSum gradient (") + variant + ", n=" + std::to_string(n) +
                                 ") is not all ones");
}

} // namespace

Term vector_sum(std::uint64_t n) {
    Type arr = Type::array(n, Type::real());
    return Term::lam("v", arr, vector_sum_body(n, Term::var("v", arr)));
}

Term vector_sum_loss(std::uint64_t n) {
    Type data = Type::array(1, Type::real());
    Type arr = Type::array(n, Type::real());
    return Term::lam("xs", data, Term::lam("ys", data, Term::lam("ps", arr, vector_sum_body(n, Term::var("ps", arr)))));
}

Term vector_sum_gradient_program(std::uint64_t n, double fill) {
    Term grad = loss_grad(vector_sum_loss(n));
    return Term::app(Term::app(Term::app(grad, filled(1, 0.0)), filled(1, 0.0)), filled(n, fill));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two or more points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

BenchReport bench_vector_sum(std::span<const std::uint64_t> sizes) {
    if (sizes.empty()) throw std::invalid_argument("bench needs at least one size");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2) throw std::invalid_argument("bench sizes must be at least 2");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("bench sizes must be strictly increasing");
    }

    BenchReport report;
    std::vector<double> xs, unopt, opt;
    for (std::uint64_t n : sizes) {
        Term program = vector_sum_gradient_program(n);
        auto optimized = run(rules::default_pipeline(), program, rules::default_registry());
        if (!optimized) throw std::runtime_error("default pipeline failed on the benchmark program");

        EvalResult slow = eval_closed(program);
        check_all_ones(slow.value, n, "unoptimized");
        EvalResult fast = eval_closed(*optimized);
        check_all_ones(fast.value, n, "optimized");

        report.rows.push_back({n, "unoptimized", slow.ops});
        report.rows.push_back({n, "optimized", fast.ops});
        xs.push_back(static_cast<double>(n));
        unopt.push_back(static_cast<double>(slow.ops.total()));
        opt.push_back(static_cast<double>(fast.ops.total()));
    }
    if (sizes.size() >= 2) {
        report.slope_unoptimized = loglog_slope(xs, unopt);
        report.slope_optimized = loglog_slope(xs, opt);
    }
    return report;
}

std::string BenchReport::table() const {
    std::ostringstream out;
    out << std::left << std::setw(8) << "n" << std::setw(13) << "variant" << std::right << std::setw(12)
        << "realArith" << std::setw(12) << "compares" << std::setw(12) << "reads" << std::setw(12) << "allocs"
        << std::setw(12) << "loopIters" << std::setw(14) << "totalOps" << "\n";
    for (const BenchRow& r : rows) {
        out << std::left << std::setw(8) << r.n << std::setw(13) << r.variant << std::right << std::setw(12)
            << r.ops.real_arith << std::setw(12) << r.ops.comparisons << std::setw(12) << r.ops.array_reads
            << std::setw(12) << r.ops.array_alloc_elems << std::setw(12) << r.ops.loop_iterations << std::setw(14)
            << r.ops.total() << "\n";
    }
    out << std::fixed << std::setprecision(3) << "log-log slope: unoptimized " << slope_unoptimized
        << ", optimized " << slope_optimized << "\n";
    return out.str();
}

std::string BenchReport::machine_lines() const {
    std::ostringstream out;
    for (const BenchRow& r : rows) out << r.n << "," << r.variant << "," << r.ops.total() << "\n";
    return out.str();
}

} // namespace dualrw
