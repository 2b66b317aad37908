// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line per criterion. Exit status 0 iff everything passes.

#include <chabauty/verify.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace chabauty;

namespace {

struct Criterion {
    int number;
    const char* description;
    std::function<verify::VerifyReport()> run;
};

} // namespace

int main() {
    std::uint64_t seed = 20260810;
    if (const char* env = std::getenv("CHABAUTY_SEED")) seed = std::strtoull(env, nullptr, 10);

    const std::vector<Criterion> criteria{
        {1, "sl3 classification totality and exact round-trip (1000 samples)",
         [&] { return verify::run_classify3(seed, 1000); }},
        {2, "sl4 classification totality and exact round-trip (1000 samples)",
         [&] { return verify::run_classify4(seed, 1000); }},
        {3, "Cartan escape limits match the four predicted walls (gap < 1e-4)",
         [&] { return verify::run_lemma53(seed, 1e-4, 20); }},
        {4, "non-Cartan orbit limits match their projective targets (gap < 1e-4)",
         [&] { return verify::run_lemma57(seed, 1e-4, 10); }},
        {5, "all ten sl4 sequence families converge to their targets (gap < 1e-3)",
         [&] { return verify::run_thm62(seed, 1e-3); }},
        {6, "exact normalizer and orbit dimensions of the eight sl3 representatives",
         [&] { return verify::run_prop56(); }},
        {7, "Borel-contained planes triangularize; rotation-contaminated ones fail",
         [&] { return verify::run_prop33(seed, 200, 50); }},
        {8, "cell census {0:2,1:2,2:3,3:1}, attaching degrees (0,0,2), pi1 order 2",
         [&] {
             auto rep = verify::run_cells();
             auto deg = verify::run_degrees();
             for (auto& c : deg.cases) rep.add_status(c.id, c.claim, c.status, c.data);
             rep.suite = "cells+degrees";
             return rep;
         }},
        {9, "dimension gap flips exactly at m = 7; block families are abelian",
         [&] { return verify::run_lemma34(); }},
        {10, "fundamental group order of the flat space is 48 for n = 3",
         [&] { return verify::run_pi1card(); }},
        {11, "sl2 boundary: certified limits are nilpotent lines; det criterion is sound",
         [&] { return verify::run_thm41(seed); }},
        {12, "phi continuity at 30 stratified targets and injectivity over 500 pairs",
         [&] { return verify::run_thm59(seed, 1e-3); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        verify::VerifyReport rep;
        bool pass = false;
        std::string note;
        try {
            rep = c.run();
            pass = rep.all_pass;
        } catch (const std::exception& e) {
            note = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s (suite %s, %zu cases, %.1fs)%s%s\n",
                    pass ? "PASS" : "FAIL", c.number, c.description, rep.suite.c_str(),
                    rep.cases.size(), secs, note.empty() ? "" : " error: ", note.c_str());
        if (!pass)
            for (const auto& cc : rep.cases)
                if (cc.status != "pass")
                    std::printf("         case %s [%s]: %s %s\n", cc.id.c_str(), cc.claim.c_str(),
                                cc.status.c_str(), cc.data.dump().c_str());
        all = all && pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
