#pragma once

#include <vector>

#include "atomq/dynamics.hpp"
#include "atomq/qstate.hpp"

namespace atomq {

/// Orthonormal basis of a subspace together with its projector.
class SubspaceBasis {
public:
    /// Checks the Gram matrix against identity within 1e-12.
    SubspaceBasis(HilbertLayout layout, std::vector<StateVector> vectors);

    const HilbertLayout& layout() const noexcept { return layout_; }
    const std::vector<StateVector>& vectors() const noexcept { return vectors_; }
    const OperatorMatrix& projector() const noexcept { return projector_; }
    std::size_t dimension() const noexcept { return vectors_.size(); }

    /// Columns are the basis vectors.
    Matrix basis_matrix() const;

private:
    HilbertLayout layout_;
    std::vector<StateVector> vectors_;
    OperatorMatrix projector_;
};

struct DfsOptions {
    /// Singular values below rel_tolerance * (largest singular value) count
    /// as zero when taking kernels.
    double rel_tolerance = 1e-9;
    std::size_t max_iterations = 256;
};

/// Largest subspace annihilated by every decay operator and mapped into
/// itself by h_interaction.
///
/// Starts from the common kernel of the decay operators and repeatedly
/// keeps only the vectors whose image under h_interaction stays inside the
/// current subspace, until the dimension stops shrinking. The returned basis
/// is canonical: Gram-Schmidt over projector columns in basis order, each
/// vector's first non-negligible amplitude made real positive, sorted by
/// dominant component index.
SubspaceBasis find_dfs(const OperatorMatrix& h_interaction,
                       const std::vector<OperatorMatrix>& decay_ops, const DfsOptions& options = {});

/// (|10> - |01>)/sqrt(2) (x) |0_cav> for two two-level atoms.
StateVector two_level_antisymmetric_state(const SystemSpec& spec);

/// (|12> - |21>)/sqrt(2) (x) |0_cav> for two lambda atoms.
StateVector lambda_antisymmetric_state(const SystemSpec& spec);

/// {|00>, |a>} with the cavity empty.
SubspaceBasis two_level_dfs_basis(const SystemSpec& spec);

/// {|00>, |01>, |10>, |11>, |a>} with the cavity empty.
SubspaceBasis lambda_dfs_basis(const SystemSpec& spec);

struct EffectiveHamiltonian {
    OperatorMatrix full;  // P H P on the whole space
    Matrix reduced;       // <v_k| H |v_l> in the subspace basis
};

EffectiveHamiltonian effective_hamiltonian(const OperatorMatrix& h_cond, const SubspaceBasis& dfs);

/// max(1/kappa, kappa/g^2): time for the cavity to reveal a non-DFS state.
double zeno_timescale(const SystemSpec& spec);

}  // namespace atomq
