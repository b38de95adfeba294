#pragma once

#include <cstdint>
#include <string>

#include "ginstat/linalg.hpp"
#include "ginstat/rng.hpp"

namespace ginstat {

/// Entry laws, all standardized to mean 0 and E|xi|^2 = 1 (complex kinds also
/// have E[xi^2] = 0). The matched-discrete kinds agree with the corresponding
/// Gaussian on every moment of order <= 4.
enum class AtomKind {
    complex_gaussian,
    real_gaussian,
    matched_discrete_real,     // {-sqrt3, 0, +sqrt3} w.p. {1/6, 2/3, 1/6}
    matched_discrete_complex,  // (A + iB)/sqrt2, A,B independent matched-discrete-real
};

bool atom_is_real(AtomKind k);
std::string atom_name(AtomKind k);
AtomKind atom_from_name(const std::string& name);

struct EnsembleSpec {
    AtomKind atom = AtomKind::complex_gaussian;
    int dim = 2;
    uint64_t master_seed = 0;

    void validate() const {
        if (dim < 2) throw std::invalid_argument("EnsembleSpec: dim must be >= 2");
    }
};

/// One scalar atom draw; slot (i, j) of the given sample stream.
cplx sample_atom(AtomKind kind, uint64_t sample_seed, uint64_t counter);

/// dim x dim matrix with i.i.d. atom entries scaled by dim^{-1/2}.
/// Entry (i,j) depends only on (derive_sample_seed(master, index), i, j), so
/// parallel generation reproduces serial output bit for bit.
ComplexMatrix sample_matrix(const EnsembleSpec& spec, uint64_t sample_index);

/// Same sample without the dim^{-1/2} scaling (raw atom entries).
ComplexMatrix sample_matrix_raw(const EnsembleSpec& spec, uint64_t sample_index);

/// Real-kind sample as a RealMatrix (for the real Schur path).
RealMatrix sample_real_matrix(const EnsembleSpec& spec, uint64_t sample_index);

/// Analytic moment table. For real kinds `moment(k)` is E[xi^k], k <= 4.
/// For complex kinds `mixed(a, b)` is E[xi^a conj(xi)^b], a + b <= 4.
struct MomentTable {
    bool real_kind = false;
    double real_moments[5] = {0, 0, 0, 0, 0};  // index = order
    cplx mixed_moments[5][5] = {};              // [a][b], a+b <= 4

    double moment(int k) const;
    cplx mixed(int a, int b) const;
};

MomentTable atom_moments(AtomKind kind, int max_order = 4);

}  // namespace ginstat
