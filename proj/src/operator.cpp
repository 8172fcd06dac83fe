// Copyright 2026 The Photonloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "photonloss/operator.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "photonloss/errors.hpp"

namespace photonloss {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t product_of(std::span<const std::size_t> dims, std::size_t begin, std::size_t end) {
  std::size_t p = 1;
  for (std::size_t k = begin; k < end; ++k) p *= dims[k];
  return p;
}

// Applies a single-mode matrix in place to a row-major tensor with the given dims.
void apply_on_mode(const Matrix& m, std::span<const std::size_t> dims, std::size_t pos, Complex* data) {
  const std::size_t d = dims[pos];
  const std::size_t outer = product_of(dims, 0, pos);
  const std::size_t inner = product_of(dims, pos + 1, dims.size());
  const auto rows = static_cast<Eigen::Index>(d);
  const auto cols = static_cast<Eigen::Index>(inner);
  RowMatrix tmp(rows, cols);
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<RowMatrix> block(data + o * d * inner, rows, cols);
    tmp.noalias() = m * block;
    block = tmp;
  }
}

double defect_of(const Matrix& u) {
  const Matrix g = u.adjoint() * u;
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m, std::size_t dim, const std::string& what) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw InvalidArgumentError(what + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                               " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

struct DenseRep {
  Matrix matrix;
};

struct LocalRep {
  Complex scale;
  std::vector<LocalFactor> factors;
  std::vector<std::size_t> positions;
};

struct SectorRep {
  Operator::SectorFactors blocks;
};

struct ProductExpRep {
  ModeId mode_a, mode_b;
  std::size_t pos_a, pos_b;
  HermitianEigen eig_a, eig_b;
  double coeff;
};

struct SumRep {
  std::vector<std::pair<Complex, Operator>> terms;
};

struct ChainRep {
  std::vector<Operator> ops;
};

struct Operator::Rep {
  std::variant<DenseRep, LocalRep, SectorRep, ProductExpRep, SumRep, ChainRep> v;
};

Matrix HermitianEigen::exp_i(double t) const {
  const Vector phases = (Complex(0.0, t) * values.cast<Complex>()).array().exp().matrix();
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

HermitianEigen eigh(const Matrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgumentError("eigh: matrix is not square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgumentError("eigh: matrix is not Hermitian");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix expm_i_hermitian(const Matrix& h, double t) { return eigh(h).exp_i(t); }

Operator::Operator(ModeLayout layout, std::shared_ptr<const Rep> rep, bool unitary)
    : layout_(std::move(layout)), rep_(std::move(rep)), unitary_(unitary) {}

Operator Operator::identity(const ModeLayout& layout) { return local(layout, {}, 1.0, true); }

Operator Operator::dense(const ModeLayout& layout, Matrix matrix, bool unitary) {
  require_square(matrix, layout.total_dim(), "dense operator");
  return Operator(layout, std::make_shared<const Rep>(Rep{DenseRep{std::move(matrix)}}), unitary);
}

Operator Operator::local(const ModeLayout& layout, std::vector<LocalFactor> factors, Complex scale,
                         bool unitary) {
  std::vector<std::size_t> positions;
  for (const LocalFactor& f : factors) {
    const std::size_t pos = layout.position(f.mode);
    if (std::find(positions.begin(), positions.end(), pos) != positions.end()) {
      throw InvalidArgumentError("local operator has two factors on mode " + f.mode.str());
    }
    require_square(f.matrix, layout.dims()[pos], "local factor on " + f.mode.str());
    positions.push_back(pos);
  }
  return Operator(layout, std::make_shared<const Rep>(Rep{LocalRep{scale, std::move(factors), std::move(positions)}}),
                  unitary);
}

Operator Operator::sector_blocks(const ModeLayout& layout, SectorFactors blocks, bool unitary) {
  if (blocks.size() != layout.info_total()) {
    throw InvalidArgumentError("sector operator needs one block list per information sector");
  }
  for (const auto& sector : blocks) {
    if (sector.size() != layout.num_anc()) {
      throw InvalidArgumentError("sector operator needs one block per ancilla mode");
    }
    for (std::size_t j = 0; j < sector.size(); ++j) {
      if (sector[j]) require_square(*sector[j], layout.anc_dims()[j], "sector block");
    }
  }
  return Operator(layout, std::make_shared<const Rep>(Rep{SectorRep{std::move(blocks)}}), unitary);
}

Operator Operator::product_exp(const ModeLayout& layout, ModeId mode_a, const Matrix& a, ModeId mode_b,
                               const Matrix& b, double coeff) {
  const std::size_t pa = layout.position(mode_a);
  const std::size_t pb = layout.position(mode_b);
  if (pa == pb) throw InvalidArgumentError("product exponential needs two distinct modes");
  require_square(a, layout.dims()[pa], "product exponential factor");
  require_square(b, layout.dims()[pb], "product exponential factor");
  ProductExpRep rep{mode_a, mode_b, pa, pb, eigh(a), eigh(b), coeff};
  return Operator(layout, std::make_shared<const Rep>(Rep{std::move(rep)}), true);
}

Operator Operator::sum(const ModeLayout& layout, std::vector<std::pair<Complex, Operator>> terms) {
  for (const auto& [c, op] : terms) {
    if (!(op.layout() == layout)) throw LayoutMismatchError("sum term on a different layout");
  }
  return Operator(layout, std::make_shared<const Rep>(Rep{SumRep{std::move(terms)}}), false);
}

Operator Operator::chain(std::vector<Operator> ops) {
  if (ops.empty()) throw InvalidArgumentError("empty operator chain");
  const ModeLayout layout = ops.front().layout();
  bool unitary = true;
  for (const Operator& op : ops) {
    if (!(op.layout() == layout)) throw LayoutMismatchError("chain of operators on different layouts");
    unitary = unitary && op.is_unitary();
  }
  return Operator(layout, std::make_shared<const Rep>(Rep{ChainRep{std::move(ops)}}), unitary);
}

Operator::Kind Operator::kind() const {
  return std::visit(
      [](const auto& r) -> Kind {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DenseRep>) return Kind::Dense;
        if constexpr (std::is_same_v<T, LocalRep>) return Kind::Local;
        if constexpr (std::is_same_v<T, SectorRep>) return Kind::SectorBlocks;
        if constexpr (std::is_same_v<T, ProductExpRep>) return Kind::ProductExp;
        if constexpr (std::is_same_v<T, SumRep>) return Kind::Sum;
        return Kind::Chain;
      },
      rep_->v);
}

Matrix Operator::sector_block(std::size_t sector, std::size_t anc_mode) const {
  const auto* r = std::get_if<SectorRep>(&rep_->v);
  if (r == nullptr) throw InvalidArgumentError("operator has no sector-block form");
  const auto& ptr = r->blocks.at(sector).at(anc_mode);
  if (!ptr) {
    const auto d = static_cast<Eigen::Index>(layout_.anc_dims()[anc_mode]);
    return Matrix::Identity(d, d);
  }
  return *ptr;
}

const std::vector<LocalFactor>& Operator::local_factors() const {
  const auto* r = std::get_if<LocalRep>(&rep_->v);
  if (r == nullptr) throw InvalidArgumentError("operator is not a local product");
  return r->factors;
}

Complex Operator::local_scale() const {
  const auto* r = std::get_if<LocalRep>(&rep_->v);
  if (r == nullptr) throw InvalidArgumentError("operator is not a local product");
  return r->scale;
}

Vector Operator::apply(const Vector& in) const {
  if (static_cast<std::size_t>(in.size()) != layout_.total_dim()) {
    throw LayoutMismatchError("vector length does not match the operator's layout");
  }
  const std::vector<std::size_t>& dims = layout_.dims();
  return std::visit(
      [&](const auto& r) -> Vector {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DenseRep>) {
          return r.matrix * in;
        } else if constexpr (std::is_same_v<T, LocalRep>) {
          Vector out = in;
          for (std::size_t f = 0; f < r.factors.size(); ++f) {
            apply_on_mode(r.factors[f].matrix, dims, r.positions[f], out.data());
          }
          if (r.scale != Complex(1.0)) out *= r.scale;
          return out;
        } else if constexpr (std::is_same_v<T, SectorRep>) {
          Vector out = in;
          std::vector<std::size_t> sub(layout_.anc_dims());
          sub.insert(sub.end(), layout_.aux_dims().begin(), layout_.aux_dims().end());
          const std::size_t seg = layout_.anc_total() * layout_.aux_total();
          for (std::size_t s = 0; s < r.blocks.size(); ++s) {
            for (std::size_t j = 0; j < r.blocks[s].size(); ++j) {
              if (r.blocks[s][j]) apply_on_mode(*r.blocks[s][j], sub, j, out.data() + s * seg);
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, ProductExpRep>) {
          Vector out = in;
          apply_on_mode(r.eig_a.vectors.adjoint(), dims, r.pos_a, out.data());
          apply_on_mode(r.eig_b.vectors.adjoint(), dims, r.pos_b, out.data());
          const std::size_t da = dims[r.pos_a];
          const std::size_t db = dims[r.pos_b];
          const std::size_t stride_a = product_of(dims, r.pos_a + 1, dims.size());
          const std::size_t stride_b = product_of(dims, r.pos_b + 1, dims.size());
          Matrix phase(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
          for (Eigen::Index k = 0; k < phase.rows(); ++k) {
            for (Eigen::Index l = 0; l < phase.cols(); ++l) {
              phase(k, l) = std::polar(1.0, r.coeff * r.eig_a.values[k] * r.eig_b.values[l]);
            }
          }
          for (std::size_t idx = 0; idx < static_cast<std::size_t>(out.size()); ++idx) {
            const auto k = static_cast<Eigen::Index>((idx / stride_a) % da);
            const auto l = static_cast<Eigen::Index>((idx / stride_b) % db);
            out[static_cast<Eigen::Index>(idx)] *= phase(k, l);
          }
          apply_on_mode(r.eig_a.vectors, dims, r.pos_a, out.data());
          apply_on_mode(r.eig_b.vectors, dims, r.pos_b, out.data());
          return out;
        } else if constexpr (std::is_same_v<T, SumRep>) {
          Vector out = Vector::Zero(in.size());
          for (const auto& [c, op] : r.terms) out += c * op.apply(in);
          return out;
        } else {
          Vector out = in;
          for (auto it = r.ops.rbegin(); it != r.ops.rend(); ++it) out = it->apply(out);
          return out;
        }
      },
      rep_->v);
}

StateVector Operator::apply(const StateVector& s) const {
  if (!(s.layout() == layout_)) throw LayoutMismatchError("state and operator live on different layouts");
  return StateVector(layout_, apply(s.amps()));
}

Operator Operator::adjoint() const {
  return std::visit(
      [&](const auto& r) -> Operator {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DenseRep>) {
          return dense(layout_, r.matrix.adjoint(), unitary_);
        } else if constexpr (std::is_same_v<T, LocalRep>) {
          std::vector<LocalFactor> f;
          for (const LocalFactor& lf : r.factors) f.push_back({lf.mode, lf.matrix.adjoint()});
          return local(layout_, std::move(f), std::conj(r.scale), unitary_);
        } else if constexpr (std::is_same_v<T, SectorRep>) {
          SectorFactors blocks(r.blocks.size());
          for (std::size_t s = 0; s < r.blocks.size(); ++s) {
            for (const auto& b : r.blocks[s]) {
              blocks[s].push_back(b ? std::make_shared<const Matrix>(b->adjoint()) : nullptr);
            }
          }
          return sector_blocks(layout_, std::move(blocks), unitary_);
        } else if constexpr (std::is_same_v<T, ProductExpRep>) {
          ProductExpRep adj = r;
          adj.coeff = -r.coeff;
          return Operator(layout_, std::make_shared<const Rep>(Rep{std::move(adj)}), true);
        } else if constexpr (std::is_same_v<T, SumRep>) {
          std::vector<std::pair<Complex, Operator>> terms;
          for (const auto& [c, op] : r.terms) terms.emplace_back(std::conj(c), op.adjoint());
          return sum(layout_, std::move(terms));
        } else {
          std::vector<Operator> ops;
          for (auto it = r.ops.rbegin(); it != r.ops.rend(); ++it) ops.push_back(it->adjoint());
          return chain(std::move(ops));
        }
      },
      rep_->v);
}

Matrix Operator::to_dense(std::size_t cap) const {
  const std::size_t n = layout_.total_dim();
  if (n > cap) {
    throw DimensionCapError("dense expansion of a " + std::to_string(n) + "-dimensional operator exceeds cap " +
                            std::to_string(cap));
  }
  if (const auto* r = std::get_if<DenseRep>(&rep_->v)) return r->matrix;
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix out(dim, dim);
  Vector e = Vector::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e[c] = 1.0;
    out.col(c) = apply(e);
    e[c] = 0.0;
  }
  return out;
}

Operator ladder_op(const ModeLayout& layout, ModeId mode, LadderKind kind) {
  const std::size_t d = layout.dim(mode);
  Matrix m = kind == LadderKind::Annihilate ? single_mode::annihilation(d) : single_mode::creation(d);
  return Operator::local(layout, {{mode, std::move(m)}});
}

Operator exp_i(const Operator& hermitian, double t) {
  const ModeLayout& layout = hermitian.layout();
  if (hermitian.kind() == Operator::Kind::Local) {
    const Complex scale = hermitian.local_scale();
    if (std::abs(scale.imag()) > 1e-14 * std::max(1.0, std::abs(scale))) {
      throw InvalidArgumentError("exp_i: generator has a complex scale and is not Hermitian");
    }
    const auto& f = hermitian.local_factors();
    const double s = scale.real() * t;
    if (f.empty()) return Operator::local(layout, {}, std::polar(1.0, s), true);
    if (f.size() == 1) return Operator::local(layout, {{f[0].mode, expm_i_hermitian(f[0].matrix, s)}}, 1.0, true);
    if (f.size() == 2) return Operator::product_exp(layout, f[0].mode, f[0].matrix, f[1].mode, f[1].matrix, s);
  }
  return Operator::dense(layout, expm_i_hermitian(hermitian.to_dense(), t), true);
}

double unitarity_defect(const Operator& op) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DenseRep>) {
          return defect_of(r.matrix);
        } else if constexpr (std::is_same_v<T, LocalRep>) {
          double d = std::abs(std::norm(r.scale) - 1.0);
          for (const LocalFactor& f : r.factors) d = std::max(d, defect_of(f.matrix));
          return d;
        } else if constexpr (std::is_same_v<T, SectorRep>) {
          double d = 0.0;
          for (const auto& sector : r.blocks) {
            for (const auto& b : sector) {
              if (b) d = std::max(d, defect_of(*b));
            }
          }
          return d;
        } else if constexpr (std::is_same_v<T, ProductExpRep>) {
          return std::max(defect_of(r.eig_a.vectors), defect_of(r.eig_b.vectors));
        } else if constexpr (std::is_same_v<T, ChainRep>) {
          double d = 0.0;
          for (const Operator& o : r.ops) d += unitarity_defect(o);
          return d;
        } else {
          return defect_of(op.to_dense());
        }
      },
      op.rep_->v);
}

double max_entry_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgumentError("matrix shapes differ");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

namespace single_mode {

Matrix annihilation(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix a = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix creation(std::size_t dim) { return annihilation(dim).adjoint(); }

Matrix number(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix n = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix position(std::size_t dim) {
  const Matrix a = annihilation(dim);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

Matrix momentum(std::size_t dim) {
  const Matrix a = annihilation(dim);
  return Complex(0.0, -1.0) * (a - a.adjoint()) / std::sqrt(2.0);
}

}  // namespace single_mode

}  // namespace photonloss
