#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "jsd/divergence.hpp"

namespace testutil {

// Independent reference for the series evaluator, written as the direct
// power-loop construction: powers 2..order, an accumulating integer
// denominator, coefficients from explicit pow() calls, result in bits.
inline double series_power_loop_bits(const jsd::WeightedPair& pair, int order) {
    const jsd::ReducedForm rf = jsd::reduce(pair);
    const double alpha = rf.alpha;
    double total = 0.0;
    for (std::size_t j = 0; j < rf.size(); ++j) {
        if (rf.pbar[j] == 0.0) continue;
        double js = 0.0;
        double denominator = 0.0;
        for (int i = 2; i <= order; ++i) {
            denominator += static_cast<double>(i - 1);
            const double c = ((i % 2 == 0) ? 1.0 : -1.0) / denominator;
            const double bi = c * (std::pow(alpha, i % 2) - std::pow(alpha, i));
            js += bi * std::pow(rf.eps[j], i);
        }
        total += rf.pbar[j] * js;
    }
    return total / 2.0 / std::log(2.0);
}

// Builds a pair from mean distribution and perturbation; callers are
// responsible for a (weighted) zero-sum eps so the parts still sum to 1.
inline jsd::WeightedPair pair_from(const std::vector<double>& pbar,
                                   const std::vector<double>& eps, double alpha = 0.0) {
    std::vector<double> p1(pbar.size()), p2(pbar.size());
    for (std::size_t j = 0; j < pbar.size(); ++j) {
        p1[j] = pbar[j] * (1.0 + eps[j]);
        p2[j] = pbar[j] * (1.0 - eps[j]);
    }
    const double pi1 = 0.5 * (1.0 + alpha);
    return jsd::WeightedPair(std::move(p1), std::move(p2), pi1, 1.0 - pi1);
}

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline CmdResult run_cmd(const std::string& cmd, const std::string& tag) {
    const std::string out_path = "/tmp/jsd_test_" + tag + ".out";
    const std::string err_path = "/tmp/jsd_test_" + tag + ".err";
    const int status = std::system((cmd + " > " + out_path + " 2> " + err_path).c_str());
    CmdResult r;
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

} // namespace testutil
