#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfcs {

using cplx = std::complex<double>;
using Index = Eigen::Index;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RowMatrixX =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using MatrixXc = MatrixX<cplx>;
using VectorXc = Eigen::VectorXcd;

/// Dense multi-leg array, row-major (last index fastest). All leg orderings
/// in the library are stated relative to this layout.
template <class Scalar>
class DenseTensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DenseTensor() = default;

  explicit DenseTensor(std::vector<Index> shape)
      : shape_(std::move(shape)), data_(Vector::Zero(count(shape_))) {}

  DenseTensor(std::vector<Index> shape, Vector data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != count(shape_))
      throw std::invalid_argument("DenseTensor: data length " +
                                  std::to_string(data_.size()) +
                                  " does not match shape product " +
                                  std::to_string(count(shape_)));
  }

  static DenseTensor scalar(Scalar value) {
    DenseTensor t(std::vector<Index>{});
    t.data_.resize(1);
    t.data_(0) = value;
    return t;
  }

  Index rank() const { return static_cast<Index>(shape_.size()); }
  Index extent(Index leg) const { return shape_.at(static_cast<size_t>(leg)); }
  const std::vector<Index>& shape() const { return shape_; }
  Index size() const { return data_.size(); }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }

  Scalar& operator[](Index flat) { return data_(flat); }
  const Scalar& operator[](Index flat) const { return data_(flat); }

  Scalar& at(std::initializer_list<Index> idx) { return data_(flat(idx)); }
  const Scalar& at(std::initializer_list<Index> idx) const {
    return data_(flat(idx));
  }

  double norm() const { return data_.norm(); }

  /// Row-major strides; stride of the last leg is 1.
  std::vector<Index> strides() const {
    std::vector<Index> s(shape_.size(), 1);
    for (Index i = rank() - 2; i >= 0; --i)
      s[static_cast<size_t>(i)] =
          s[static_cast<size_t>(i) + 1] * shape_[static_cast<size_t>(i) + 1];
    return s;
  }

  /// Same data, new leg structure. Requires equal element count.
  DenseTensor reshaped(std::vector<Index> shape) const {
    if (count(shape) != data_.size())
      throw std::invalid_argument("reshape: element count mismatch");
    return DenseTensor(std::move(shape), data_);
  }

  /// New tensor with legs reordered so that new leg i is old leg perm[i].
  DenseTensor permuted(const std::vector<Index>& perm) const {
    if (static_cast<Index>(perm.size()) != rank())
      throw std::invalid_argument("permute: wrong permutation length");
    std::vector<bool> seen(perm.size(), false);
    for (Index p : perm) {
      if (p < 0 || p >= rank() || seen[static_cast<size_t>(p)])
        throw std::invalid_argument("permute: invalid permutation");
      seen[static_cast<size_t>(p)] = true;
    }
    // identity fast path
    bool id = true;
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<Index>(i)) id = false;
    if (id) return *this;

    std::vector<Index> new_shape(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
      new_shape[i] = shape_[static_cast<size_t>(perm[i])];
    DenseTensor out(new_shape);
    const auto in_strides = strides();
    // stride of each output leg within the input data
    std::vector<Index> map_strides(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
      map_strides[i] = in_strides[static_cast<size_t>(perm[i])];

    const Index r = rank();
    std::vector<Index> idx(static_cast<size_t>(r), 0);
    Index src = 0;
    for (Index flat = 0; flat < out.size(); ++flat) {
      out.data_(flat) = data_(src);
      for (Index leg = r - 1; leg >= 0; --leg) {
        auto l = static_cast<size_t>(leg);
        if (++idx[l] < new_shape[l]) {
          src += map_strides[l];
          break;
        }
        src -= map_strides[l] * (new_shape[l] - 1);
        idx[l] = 0;
      }
    }
    return out;
  }

  /// View the tensor as a matrix grouping the first `left_legs` legs as rows.
  Eigen::Map<const RowMatrixX<Scalar>> as_matrix(Index left_legs) const {
    Index rows = 1, cols = 1;
    for (Index i = 0; i < rank(); ++i)
      (i < left_legs ? rows : cols) *= shape_[static_cast<size_t>(i)];
    return Eigen::Map<const RowMatrixX<Scalar>>(data_.data(), rows, cols);
  }

  static Index count(const std::vector<Index>& shape) {
    Index n = 1;
    for (Index e : shape) {
      if (e <= 0) throw std::invalid_argument("DenseTensor: nonpositive extent");
      n *= e;
    }
    return n;
  }

 private:
  Index flat(std::initializer_list<Index> idx) const {
    if (static_cast<Index>(idx.size()) != rank())
      throw std::invalid_argument("index rank mismatch");
    Index f = 0;
    auto it = idx.begin();
    for (size_t i = 0; i < shape_.size(); ++i, ++it) {
      if (*it < 0 || *it >= shape_[i]) throw std::out_of_range("tensor index");
      f = f * shape_[i] + *it;
    }
    return f;
  }

  std::vector<Index> shape_;
  Vector data_;
};

using Tensor = DenseTensor<cplx>;

/// Build a rank-2 tensor from a matrix (row-major copy).
template <class Scalar, class Derived>
DenseTensor<Scalar> tensor_from_matrix(const Eigen::MatrixBase<Derived>& m) {
  DenseTensor<Scalar> t({m.rows(), m.cols()});
  Eigen::Map<RowMatrixX<Scalar>>(t.data().data(), m.rows(), m.cols()) = m;
  return t;
}

inline Tensor tensor_from_matrix(const MatrixXc& m) {
  return tensor_from_matrix<cplx>(m);
}

template <class Scalar>
MatrixX<Scalar> matrix_from_tensor(const DenseTensor<Scalar>& t,
                                   Index left_legs) {
  return t.as_matrix(left_legs);
}

/// Pairwise contraction over legs_a of `a` against legs_b of `b`.
/// Result legs: remaining legs of a (in order), then remaining legs of b.
template <class Scalar>
DenseTensor<Scalar> contract(const DenseTensor<Scalar>& a,
                             const std::vector<Index>& legs_a,
                             const DenseTensor<Scalar>& b,
                             const std::vector<Index>& legs_b) {
  if (legs_a.size() != legs_b.size())
    throw std::invalid_argument("contract: unequal number of paired legs");
  for (size_t i = 0; i < legs_a.size(); ++i) {
    if (legs_a[i] < 0 || legs_a[i] >= a.rank() || legs_b[i] < 0 ||
        legs_b[i] >= b.rank())
      throw std::invalid_argument("contract: leg index out of range");
    if (a.extent(legs_a[i]) != b.extent(legs_b[i]))
      throw std::invalid_argument(
          "contract: extent mismatch on paired legs (" +
          std::to_string(a.extent(legs_a[i])) + " vs " +
          std::to_string(b.extent(legs_b[i])) + ")");
  }

  auto free_legs = [](Index rank, const std::vector<Index>& paired) {
    std::vector<bool> used(static_cast<size_t>(rank), false);
    for (Index p : paired) used[static_cast<size_t>(p)] = true;
    std::vector<Index> free;
    for (Index i = 0; i < rank; ++i)
      if (!used[static_cast<size_t>(i)]) free.push_back(i);
    return free;
  };
  const std::vector<Index> free_a = free_legs(a.rank(), legs_a);
  const std::vector<Index> free_b = free_legs(b.rank(), legs_b);

  std::vector<Index> perm_a = free_a;
  perm_a.insert(perm_a.end(), legs_a.begin(), legs_a.end());
  std::vector<Index> perm_b = legs_b;
  perm_b.insert(perm_b.end(), free_b.begin(), free_b.end());

  const DenseTensor<Scalar> ap = a.permuted(perm_a);
  const DenseTensor<Scalar> bp = b.permuted(perm_b);

  Index k = 1;
  for (Index l : legs_a) k *= a.extent(l);
  const Index rows = ap.size() / k;
  const Index cols = bp.size() / k;

  std::vector<Index> out_shape;
  for (Index l : free_a) out_shape.push_back(a.extent(l));
  for (Index l : free_b) out_shape.push_back(b.extent(l));

  DenseTensor<Scalar> out(out_shape);
  Eigen::Map<const RowMatrixX<Scalar>> ma(ap.data().data(), rows, k);
  Eigen::Map<const RowMatrixX<Scalar>> mb(bp.data().data(), k, cols);
  Eigen::Map<RowMatrixX<Scalar>> mo(out.data().data(), rows, cols);
  mo.noalias() = ma * mb;
  return out;
}

}  // namespace tfcs
