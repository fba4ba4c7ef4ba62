#ifndef HRIGID_CORPUS_HPP
#define HRIGID_CORPUS_HPP

#include "io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrigid {

/// A bundled cohomology ring together with its known class-H verdict.
struct CorpusEntry {
    std::string name;
    std::string description;
    std::string text;  // file contents, either input format
    bool in_class_h = false;
    std::optional<int> certificate_degree;  // degree of the first obstruction when not in class H
};

namespace detail {

inline std::string projective_space(int n)
{
    return "# rational cohomology of complex projective space CP^" + std::to_string(n) + "\nname CP" +
           std::to_string(n) + "\ngenerator x degree 2 truncate " + std::to_string(n + 1) + "\n";
}

inline std::string sphere(int n)
{
    return "# rational cohomology of the " + std::to_string(n) + "-sphere\nname S" + std::to_string(n) +
           "\ngenerator x degree " + std::to_string(n) + "\n";
}

inline std::string torus_table(int s)
{
    return "# rational cohomology of the " + std::to_string(s) + "-torus, as a structure-constant table\n" +
           serialize_structure_constants(exterior_algebra(s, "t").renamed("T" + std::to_string(s)));
}

} // namespace detail

inline const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (int n = 1; n <= 4; ++n) {
            out.push_back({"cp" + std::to_string(n), "complex projective space CP^" + std::to_string(n),
                           detail::projective_space(n), true, std::nullopt});
        }
        for (int n = 2; n <= 7; ++n) {
            const bool even = n % 2 == 0;
            out.push_back({"s" + std::to_string(n), "sphere S^" + std::to_string(n), detail::sphere(n), even,
                           even ? std::nullopt : std::optional<int>(-n)});
        }
        for (int s = 1; s <= 3; ++s) {
            out.push_back({"t" + std::to_string(s), "torus T^" + std::to_string(s) + " (not simply connected)",
                           detail::torus_table(s), false, -1});
        }
        out.push_back({"cp1xcp1", "product CP^1 x CP^1",
                       "# rational cohomology of CP^1 x CP^1\nname CP1xCP1\n"
                       "generator x degree 2 truncate 2\ngenerator y degree 2 truncate 2\n",
                       true, std::nullopt});
        out.push_back({"cp2xs4", "product CP^2 x S^4",
                       "# rational cohomology of CP^2 x S^4\nname CP2xS4\n"
                       "generator x degree 2 truncate 3\ngenerator y degree 4 truncate 2\n",
                       true, std::nullopt});
        return out;
    }();
    return entries;
}

inline const CorpusEntry* find_corpus_entry(const std::string& name)
{
    for (const auto& e : corpus()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

} // namespace hrigid

#endif
