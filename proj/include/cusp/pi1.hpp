#ifndef CUSP_PI1_HPP
#define CUSP_PI1_HPP

#include <string>
#include <vector>

#include "cusp/bigint.hpp"

namespace cusp {

// Word in a free group: letters are +-(index+1) for generator index^<+-1>.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> l) : letters(std::move(l)) {}

    Word inverse() const;
    Word operator*(const Word &o) const;
    bool operator==(const Word &o) const { return letters == o.letters; }
};

Word free_reduce(const Word &w);
Word cyclic_reduce(const Word &w);

// Either a concrete relator word, or the schematic braid relator
// g_i^{sigma^b} = gamma^-1 g_i gamma with the exponent b left symbolic.
struct Relator {
    Word word;                 // reduced relator (means word = 1)
    bool symbolic = false;     // schematic relator carrying the parameter b
    std::string display;       // rendering "lhs = rhs"
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Relator> relators;
    std::string case_tag;      // "r-odd" or "r-even"
    std::string provenance;    // "raw-ZVK" or "simplified"
    long long r = 0;
    long long half = 0;        // m with r = 2m or 2m+1
};

// Half-twist braid action on two free generators: g1 -> g2, g2 -> g2 g1 g2^-1.
Word braid_sigma(const Word &w, int iterations);

struct PresentationPair {
    Presentation raw;
    Presentation simplified;
    // substitution words alpha = g2 g1, beta = (g2 g1)^m g2 in the raw generators
    Word alpha_word, beta_word;
};

PresentationPair presentations_for(long long r);

// Smith normal form diagonal d1 | d2 | ... of an integer matrix.
std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> mat);

struct Abelianization {
    long long free_rank = 0;
    std::vector<BigInt> torsion;     // invariant factors > 1
    std::vector<BigInt> snf_diagonal;
};

// Exponent-sum matrix of the concrete relators, then SNF.
Abelianization abelianization(const Presentation &p);

std::string render_presentation(const Presentation &p);

} // namespace cusp

#endif
