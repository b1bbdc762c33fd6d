#include "cusp/pi1.hpp"

#include <algorithm>
#include <stdexcept>

namespace cusp {

Word Word::inverse() const {
    Word r;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        r.letters.push_back(-*it);
    return r;
}

Word Word::operator*(const Word &o) const {
    Word r = *this;
    r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
    return free_reduce(r);
}

Word free_reduce(const Word &w) {
    Word r;
    for (int l : w.letters) {
        if (!r.letters.empty() && r.letters.back() == -l)
            r.letters.pop_back();
        else
            r.letters.push_back(l);
    }
    return r;
}

Word cyclic_reduce(const Word &w) {
    Word r = free_reduce(w);
    while (r.letters.size() >= 2 && r.letters.front() == -r.letters.back()) {
        r.letters.erase(r.letters.begin());
        r.letters.pop_back();
    }
    return r;
}

namespace {

// substitute images for generators (1-based indices)
Word substitute(const Word &w, const std::vector<Word> &images) {
    Word out;
    for (int l : w.letters) {
        int g = l > 0 ? l : -l;
        if ((size_t)g > images.size()) {
            out.letters.push_back(l);   // untouched generator
            continue;
        }
        Word im = l > 0 ? images[(size_t)g - 1] : images[(size_t)g - 1].inverse();
        out.letters.insert(out.letters.end(), im.letters.begin(), im.letters.end());
    }
    return free_reduce(out);
}

std::string word_str(const Word &w, const std::vector<std::string> &gens) {
    if (w.letters.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        int l = w.letters[i];
        int g = l > 0 ? l : -l;
        // run-length collect
        size_t j = i;
        int count = 0;
        while (j < w.letters.size() && w.letters[j] == l) { ++count; ++j; }
        if (!out.empty()) out += ".";
        out += gens[(size_t)g - 1];
        int e = l > 0 ? count : -count;
        if (e != 1) out += "^" + std::to_string(e);
        i = j - 1;
    }
    return out;
}

} // namespace

Word braid_sigma(const Word &w, int iterations) {
    // sigma: g1 -> g2, g2 -> g2 g1 g2^-1 (generators 1 and 2)
    Word g1{{1}}, g2{{2}};
    Word cur = w;
    for (int it = 0; it < iterations; ++it) {
        std::vector<Word> images = {g2, free_reduce(Word{{2, 1, -2}})};
        cur = substitute(cur, images);
    }
    return cur;
}

PresentationPair presentations_for(long long r) {
    if (r < 1) throw std::invalid_argument("presentations_for: r must be >= 1");
    PresentationPair out;
    long long m = r / 2;
    bool odd = (r % 2) != 0;

    Presentation &raw = out.raw;
    raw.generators = {"g1", "g2", "gamma"};
    raw.provenance = "raw-ZVK";
    raw.case_tag = odd ? "r-odd" : "r-even";
    raw.r = r;
    raw.half = m;
    for (int i = 1; i <= 2; ++i) {
        Word gi{{i}};
        Word lhs = braid_sigma(gi, (int)r);
        Relator rel;
        rel.word = cyclic_reduce(lhs * gi.inverse());
        rel.display = word_str(lhs, raw.generators) + " = " + word_str(gi, raw.generators);
        raw.relators.push_back(rel);
    }
    for (int i = 1; i <= 2; ++i) {
        Relator rel;
        rel.symbolic = true;
        rel.display = std::string("g") + std::to_string(i) + "^{sigma^b} = gamma^-1.g" +
                      std::to_string(i) + ".gamma   [b from the braid monodromy factorization]";
        raw.relators.push_back(rel);
    }
    {
        // gamma commutes with g2 g1: a consequence of the schematic relators
        // (g2 g1 is sigma-invariant), emitted as the meridian commuting relation.
        Relator rel;
        Word a{{2, 1}};
        Word gamma{{3}};
        rel.word = cyclic_reduce(gamma * a * gamma.inverse() * a.inverse());
        rel.display = "gamma.g2.g1 = g2.g1.gamma";
        raw.relators.push_back(rel);
    }

    Presentation &s = out.simplified;
    s.generators = {"alpha", "beta", "gamma"};
    s.provenance = "simplified";
    s.case_tag = odd ? "r-odd" : "r-even";
    s.r = r;
    s.half = m;
    Word alpha{{1}}, beta{{2}}, gamma{{3}};
    if (odd) {
        // beta alpha^r = alpha^r beta
        Word ar;
        for (long long i = 0; i < r; ++i) ar.letters.push_back(1);
        Relator r1;
        r1.word = cyclic_reduce(beta * ar * beta.inverse() * ar.inverse());
        r1.display = "beta.alpha^" + std::to_string(r) + " = alpha^" + std::to_string(r) + ".beta";
        s.relators.push_back(r1);
    } else {
        // alpha^r = beta^2
        Word w;
        for (long long i = 0; i < r; ++i) w.letters.push_back(1);
        w.letters.push_back(-2);
        w.letters.push_back(-2);
        Relator r1;
        r1.word = cyclic_reduce(w);
        r1.display = "alpha^" + std::to_string(r) + " = beta^2";
        s.relators.push_back(r1);
    }
    Relator r2;
    r2.word = cyclic_reduce(gamma * alpha * gamma.inverse() * alpha.inverse());
    r2.display = "gamma.alpha = alpha.gamma";
    s.relators.push_back(r2);

    // substitution words
    out.alpha_word = Word{{2, 1}};
    Word bw;
    for (long long i = 0; i < m; ++i) { bw.letters.push_back(2); bw.letters.push_back(1); }
    bw.letters.push_back(2);
    out.beta_word = free_reduce(bw);
    return out;
}

std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<BigInt> diag;
    size_t top = 0, left = 0;
    while (top < rows && left < cols) {
        // find smallest nonzero pivot in the submatrix
        size_t pi = rows, pj = cols;
        for (size_t i = top; i < rows; ++i)
            for (size_t j = left; j < cols; ++j) {
                if (m[i][j].is_zero()) continue;
                if (pi == rows || m[i][j].abs() < m[pi][pj].abs()) { pi = i; pj = j; }
            }
        if (pi == rows) break;   // all zero
        std::swap(m[top], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][left], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = top + 1; i < rows; ++i) {
                if (m[i][left].is_zero()) continue;
                BigInt q = m[i][left] / m[top][left];
                for (size_t j = left; j < cols; ++j)
                    m[i][j] = m[i][j] - q * m[top][j];
                if (!m[i][left].is_zero()) {
                    std::swap(m[top], m[i]);
                    clean = false;
                }
            }
            for (size_t j = left + 1; j < cols; ++j) {
                if (m[top][j].is_zero()) continue;
                BigInt q = m[top][j] / m[top][left];
                for (size_t i = top; i < rows; ++i)
                    m[i][j] = m[i][j] - q * m[i][left];
                if (!m[top][j].is_zero()) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][left], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(m[top][left].abs());
        ++top;
        ++left;
    }
    // enforce the divisibility chain d1 | d2 | ...
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if ((diag[j] % diag[i]).is_zero()) continue;
            BigInt g = BigInt::gcd(diag[i], diag[j]);
            BigInt l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

Abelianization abelianization(const Presentation &p) {
    size_t n = p.generators.size();
    std::vector<std::vector<BigInt>> mat;
    for (const auto &rel : p.relators) {
        if (rel.symbolic) continue;
        std::vector<BigInt> row(n, BigInt(0));
        for (int l : rel.word.letters) {
            int g = l > 0 ? l : -l;
            row[(size_t)g - 1] += BigInt(l > 0 ? 1 : -1);
        }
        bool zero = std::all_of(row.begin(), row.end(), [](const BigInt &b) { return b.is_zero(); });
        if (!zero) mat.push_back(row);
    }
    Abelianization ab;
    ab.snf_diagonal = smith_normal_form(mat);
    size_t rank = 0;
    for (const auto &d : ab.snf_diagonal) {
        if (d.is_zero()) continue;
        ++rank;
        if (!d.is_one()) ab.torsion.push_back(d);
    }
    ab.free_rank = (long long)n - (long long)rank;
    return ab;
}

std::string render_presentation(const Presentation &p) {
    std::string out = "< ";
    for (size_t i = 0; i < p.generators.size(); ++i) {
        if (i) out += ", ";
        out += p.generators[i];
    }
    out += " | ";
    bool first = true;
    for (const auto &rel : p.relators) {
        if (!first) out += " ; ";
        out += rel.display;
        first = false;
    }
    out += " >";
    return out;
}

} // namespace cusp
