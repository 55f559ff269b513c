#pragma once

#include "levilab/lie_algebra.hpp"

namespace levilab {

// A standard Cartan datum (nu, c): the base point factor n = exp(i nu) with
// nu in the fundamental a0, and a theta-stable Cartan subalgebra c = t + a of
// g2 meet Ad(n^{-1}) g1. Bases are realified columns, t columns first.
struct CartanDatum {
  VectorXd nu;        // realified algebra element
  MatrixXd c_basis;   // 2n x r, Re<,>-orthonormal, t block then a block
  int t_dim = 0;
  int a_dim = 0;

  MatrixXd t_basis() const { return c_basis.leftCols(t_dim); }
  MatrixXd a_basis() const { return c_basis.rightCols(a_dim); }
  int rank() const { return t_dim + a_dim; }
  bool compact() const { return a_dim == 0; }
  bool noncompact() const { return t_dim == 0 && a_dim > 0; }
};

// a0: maximal abelian in p1 meet p2. t0: maximal abelian in the centralizer
// of a0 inside k1 meet k2. Both found by seeded random centralizer
// refinement; maximality is certified afterwards.
struct FundamentalSpaces {
  MatrixXd a0;
  MatrixXd t0;
};

FundamentalSpaces fundamental_spaces(const RealFormSetup& s, std::uint64_t seed,
                                     const Tolerances& tol = {});

// The fundamental datum: nu = 0, c = t0 + a0.
CartanDatum fundamental_datum(const RealFormSetup& s, std::uint64_t seed,
                              const Tolerances& tol = {});

// Validates and assembles a datum from a candidate: c must be abelian,
// theta-stable, inside Fix(sigma2) and Fix(Ad(n^{-1}) sigma1 Ad(n)), and
// self-centralizing in the tau_n-fixed subalgebra.
CartanDatum make_datum(const RealFormSetup& s, const VectorXd& nu,
                       const MatrixXd& c_candidate, const Tolerances& tol = {});

// {v in span(space) : [e, v] = 0 for every column e of elems}.
MatrixXd centralizer_in(const RealFormSetup& s, const MatrixXd& space,
                        const MatrixXd& elems, const Tolerances& tol = {});

MatrixXd maximal_abelian_in(const RealFormSetup& s, const MatrixXd& space,
                            std::uint64_t seed, const Tolerances& tol = {});

bool is_abelian(const RealFormSetup& s, const MatrixXd& space, double tol);

// Realified tau_n = exp(-i ad nu) sigma1 exp(i ad nu) sigma2.
MatrixXd tau_n_operator(const RealFormSetup& s, const VectorXd& nu,
                        const Tolerances& tol = {});

}  // namespace levilab
