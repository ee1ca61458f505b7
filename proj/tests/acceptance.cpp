// Acceptance runner: one PASS/FAIL line per criterion, with the worst error against its
// tolerance and the runtime against its limit. Exit status is nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rbt/rbt.hpp"

namespace {

struct Criterion {
    int id;
    const char* title;
    std::vector<const char*> suites;
    double seconds_limit;
};

const std::vector<Criterion> criteria{
    {1, "disk basis orthonormality", {"orthonormality-disk"}, 10},
    {2, "Maass eigen-equation", {"eigen-equation"}, 5},
    {3, "overlap closed form vs series", {"overlap"}, 10},
    {4, "Srivastava-Rao and Saran identities", {"srivastava-rao", "saran"}, 10},
    {5, "oscillator orthonormality", {"orthonormality-oscillator"}, 30},
    {6, "closed-form wavefunction vs oracle", {"wavefunction"}, 60},
    {7, "F5 reduction and Pfaff identities", {"f5-reductions"}, 5},
    {8, "transform maps oscillator basis to disk basis", {"isometry"}, 120},
    {9, "m = 0 kernel consistency and holomorphy", {"m0-reduction"}, 60},
    {10, "resolution of identity", {"resolution"}, 120},
    {11, "classical transform monomial images", {"classical"}, 10},
};

}  // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    const double total_limit = 480.0;
    bool all_pass = true;
    auto t_all = clock::now();
    for (const auto& c : criteria) {
        int n_checks = 0, n_failed = 0;
        double worst_ratio = 0.0, worst_err = 0.0, worst_tol = 0.0;
        std::string first_failure;
        auto t0 = clock::now();
        for (const char* s : c.suites) {
            rbt::SuiteReport rep = rbt::run_suite(s);
            for (const auto& ch : rep.checks) {
                ++n_checks;
                double ratio = std::isfinite(ch.error) ? ch.error / ch.tol : INFINITY;
                if (ratio >= worst_ratio) {
                    worst_ratio = ratio;
                    worst_err = ch.error;
                    worst_tol = ch.tol;
                }
                if (!ch.pass) {
                    ++n_failed;
                    if (first_failure.empty())
                        first_failure = ch.name + (ch.message.empty() ? "" : " (" + ch.message + ")");
                }
            }
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool pass = n_checks > 0 && n_failed == 0 && secs < c.seconds_limit;
        all_pass = all_pass && pass;
        std::printf("%s  [%2d] %-48s checks %3d  worst err %.3e (tol %.0e)  time %7.3f s (limit %g s)\n",
                    pass ? "PASS" : "FAIL", c.id, c.title, n_checks, worst_err, worst_tol, secs, c.seconds_limit);
        if (!first_failure.empty()) std::printf("      first failing check: %s\n", first_failure.c_str());
    }
    double total = std::chrono::duration<double>(clock::now() - t_all).count();
    bool total_ok = total < total_limit;
    std::printf("%s  total runtime %.3f s (limit %g s)\n", total_ok ? "PASS" : "FAIL", total, total_limit);
    all_pass = all_pass && total_ok;
    std::printf("%s\n", all_pass ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    std::fflush(stdout);
    return all_pass ? 0 : 1;
}
