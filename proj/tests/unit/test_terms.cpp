#include <catch_amalgamated.hpp>

#include <algorithm>

#include "lfpdc/terms.hpp"

using namespace lfpdc::terms;

namespace
{

bool has_creation_pair(const SymbolicTerm& t)
{
    return std::count_if(t.factors.begin(), t.factors.end(),
                         [](const Factor& f) { return f.character == Character::creation; }) >= 2;
}

}  // namespace

TEST_CASE("first-order expansion")
{
    const auto t1 = expand_atomic_solution(1);
    REQUIRE_FALSE(t1.empty());
    for (const auto& t : t1)
    {
        REQUIRE(t.factors.size() == 2);
        REQUIRE_FALSE(has_creation_pair(t));
    }
    REQUIRE(filter_rwa(t1).empty());
}

TEST_CASE("second-order expansion counts")
{
    const auto t2 = expand_atomic_solution(2);
    REQUIRE(t2.size() == 16);
    REQUIRE(std::count_if(t2.begin(), t2.end(), has_creation_pair) == 4);
    REQUIRE(filter_rwa(t2).size() == 4);

    std::vector<SymbolicTerm> annihilation;
    for (const auto& t : t2)
        if (std::none_of(t.factors.begin(), t.factors.end(),
                         [](const Factor& f) { return f.character == Character::creation; }))
            annihilation.push_back(t);
    REQUIRE_FALSE(annihilation.empty());
    REQUIRE(filter_rwa(annihilation).empty());
}

TEST_CASE("time integration produces the printed denominators")
{
    const auto kept = filter_rwa(expand_atomic_solution(2));
    for (const auto& t : kept)
    {
        const auto r = integrate_time_nested(t);
        REQUIRE(r.integrated);
        REQUIRE(r.denominators.size() == 2);
        REQUIRE(r.denominators[0].n_w == 0);
        REQUIRE(r.denominators[0].n_wp == 1);
        REQUIRE(r.denominators[1].n_w == 1);
        REQUIRE(r.denominators[1].n_wp == 1);
    }
    // first surviving pattern: (w' - w_ik)(w + w' - w_ij)
    const auto s = replay();
    const CanonicalSummand first = reference_k_structure().front();
    REQUIRE(std::find(s.begin(), s.end(), first) != s.end());

    SymbolicTerm bare;
    bare.factors.clear();
    const auto r = integrate_time_nested(bare);
    REQUIRE(r.denominators.empty());
}

TEST_CASE("replay reproduces the four-term coupling tensor")
{
    const auto s = replay();
    REQUIRE(s.size() == 4);
    REQUIRE(s == reference_k_structure());
    std::vector<int> signs;
    for (const auto& t : reference_k_structure())
    {
        signs.push_back(t.sign);
        REQUIRE(t.conjugated == std::array<bool, 3>{true, true, false});
    }
    std::sort(signs.begin(), signs.end());
    REQUIRE(signs == std::vector<int>{-1, -1, 1, 1});
}

TEST_CASE("the printed recursive conventions do not reproduce the tensor")
{
    REQUIRE(replay(CouplingConvention::recursive_as_printed) != reference_k_structure());
    REQUIRE(replay(CouplingConvention::atomic_eom_as_printed) != reference_k_structure());
}

TEST_CASE("canonical form is invariant under relabeling")
{
    std::vector<SymbolicTerm> integrated;
    for (const auto& t : filter_rwa(expand_atomic_solution(2)))
        integrated.push_back(integrate_time_nested(t));
    const auto base = to_coupling_structure(integrated);
    std::vector<int> perm{I, J, K, P};
    do
    {
        std::map<int, int> m;
        for (int k = 0; k < 4; ++k)
            m[k] = perm[std::size_t(k)];
        std::vector<SymbolicTerm> moved;
        for (const auto& t : integrated)
            moved.push_back(relabel(t, m));
        REQUIRE(to_coupling_structure(moved) == base);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("formatted structure is stable")
{
    REQUIRE(format_structure(replay()) == format_structure(reference_k_structure()));
    REQUIRE(format_structure(replay()) ==
            "- sigma_ii g*[w]_ij g*[w']_ki g[w'']_kj / (w' - w_ki)(w + w' - w_kj)\n"
            "- sigma_ii g*[w]_ji g*[w']_ik g[w'']_jk / (w' - w_ik)(w + w' - w_jk)\n"
            "+ sigma_ii g*[w]_jk g*[w']_ij g[w'']_ik / (w' - w_ij)(w + w' - w_ik)\n"
            "+ sigma_ii g*[w]_jk g*[w']_ki g[w'']_ji / (w' - w_ki)(w + w' - w_ji)\n");
}
