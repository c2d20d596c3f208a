// Copyright 2026 The loqc-frontier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "loqc/fock.hpp"

#include <bit>
#include <sstream>

namespace loqc {

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
  photons_ = 0;
  for (int n : occ_) {
    if (n < 0) throw ShapeError("FockState: negative occupation number");
    photons_ += n;
  }
}

FockState FockState::concat(const FockState& a, const FockState& b) {
  std::vector<int> occ = a.occ_;
  occ.insert(occ.end(), b.occ_.begin(), b.occ_.end());
  return FockState(std::move(occ));
}

FockState FockState::prefix(int n_modes) const {
  if (n_modes < 0 || n_modes > this->n_modes())
    throw ShapeError("FockState::prefix: mode count out of range");
  return FockState(std::vector<int>(occ_.begin(), occ_.begin() + n_modes));
}

FockState FockState::suffix(int from_mode) const {
  if (from_mode < 0 || from_mode > n_modes())
    throw ShapeError("FockState::suffix: mode index out of range");
  return FockState(std::vector<int>(occ_.begin() + from_mode, occ_.end()));
}

std::string FockState::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < occ_.size(); ++i) {
    if (i) os << ',';
    os << occ_[i];
  }
  os << ')';
  return os.str();
}

std::uint64_t FockBasis::dimension(int n_modes, int n_photons, std::uint64_t cap) {
  if (n_modes < 1) throw ShapeError("FockBasis: need at least one mode");
  if (n_photons < 0) throw ShapeError("FockBasis: negative photon number");
  // C(n_modes + n_photons - 1, n_photons); the running product stays integral.
  std::uint64_t dim = 1;
  for (int i = 1; i <= n_photons; ++i) {
    dim = dim * static_cast<std::uint64_t>(n_modes - 1 + i) / static_cast<std::uint64_t>(i);
    if (dim > cap)
      throw CapacityError("FockBasis: dimension exceeds cap of " + std::to_string(cap));
  }
  return dim;
}

FockBasis FockBasis::enumerate(int n_modes, int n_photons, std::uint64_t dimension_cap) {
  std::uint64_t dim = dimension(n_modes, n_photons, dimension_cap);

  FockBasis basis;
  basis.n_modes_ = n_modes;
  basis.n_photons_ = n_photons;
  basis.states_.reserve(dim);

  // Lexicographically descending: start from (M, 0, ..., 0) and repeatedly
  // move a photon from the rightmost mode that still precedes a nonzero tail.
  std::vector<int> occ(static_cast<size_t>(n_modes), 0);
  occ[0] = n_photons;
  while (true) {
    basis.states_.emplace_back(FockState(occ));
    // find rightmost index < n_modes-1 with occ > 0
    int i = n_modes - 2;
    while (i >= 0 && occ[static_cast<size_t>(i)] == 0) --i;
    if (i < 0) break;
    // move one photon from i to i+1 and collapse everything right of i+1
    int tail = 0;
    for (int j = i + 1; j < n_modes; ++j) {
      tail += occ[static_cast<size_t>(j)];
      occ[static_cast<size_t>(j)] = 0;
    }
    occ[static_cast<size_t>(i)] -= 1;
    occ[static_cast<size_t>(i) + 1] = tail + 1;
  }

  for (std::size_t i = 0; i < basis.states_.size(); ++i)
    basis.index_[basis.states_[i].occupations()] = i;
  return basis;
}

std::size_t FockBasis::index_of(const FockState& s) const { return index_of(s.occupations()); }

std::size_t FockBasis::index_of(const std::vector<int>& occupations) const {
  auto it = index_.find(occupations);
  if (it == index_.end())
    throw ShapeError("FockBasis::index_of: state not in basis");
  return it->second;
}

double factorial(int n) {
  static const double table[] = {1.,
                                 1.,
                                 2.,
                                 6.,
                                 24.,
                                 120.,
                                 720.,
                                 5040.,
                                 40320.,
                                 362880.,
                                 3628800.,
                                 39916800.,
                                 479001600.,
                                 6227020800.,
                                 87178291200.,
                                 1307674368000.,
                                 20922789888000.,
                                 355687428096000.,
                                 6402373705728000.};
  if (n < 0 || n > 18) throw CapacityError("factorial: argument out of supported range");
  return table[n];
}

namespace {

// perm(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} a_ij,
// iterated in Gray-code order so each step toggles a single column.
Complex ryser(const Complex* a, int n) {
  if (n == 0) return Complex(1.0, 0.0);
  Complex row_sum[TransitionKernel::kMaxPhotons];
  for (int i = 0; i < n; ++i) row_sum[i] = Complex(0.0, 0.0);

  Complex total(0.0, 0.0);
  std::uint32_t prev = 0;
  const std::uint32_t end = (n >= 32) ? 0 : (1u << n);
  for (std::uint32_t k = 1; k != end; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const std::uint32_t diff = gray ^ prev;
    const int j = std::countr_zero(diff);
    if (gray & diff) {
      for (int i = 0; i < n; ++i) row_sum[i] += a[i * n + j];
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= a[i * n + j];
    }
    Complex prod = row_sum[0];
    for (int i = 1; i < n; ++i) prod *= row_sum[i];
    if ((n - std::popcount(gray)) & 1)
      total -= prod;
    else
      total += prod;
    prev = gray;
  }
  return total;
}

// Same enumeration, also accumulating all entry derivatives
//   dperm[r][s] = (-1)^n sum_{S contains s} (-1)^{|S|} prod_{i != r} row_sum_i(S).
Complex ryser_with_gradient(const Complex* a, int n, Complex* dperm) {
  for (int i = 0; i < n * n; ++i) dperm[i] = Complex(0.0, 0.0);
  if (n == 0) return Complex(1.0, 0.0);

  Complex row_sum[TransitionKernel::kMaxPhotons];
  Complex prefix[TransitionKernel::kMaxPhotons];
  Complex suffix[TransitionKernel::kMaxPhotons];
  Complex omit[TransitionKernel::kMaxPhotons];
  int cols[TransitionKernel::kMaxPhotons];
  for (int i = 0; i < n; ++i) row_sum[i] = Complex(0.0, 0.0);

  Complex total(0.0, 0.0);
  std::uint32_t prev = 0;
  const std::uint32_t end = (n >= 32) ? 0 : (1u << n);
  for (std::uint32_t k = 1; k != end; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const std::uint32_t diff = gray ^ prev;
    const int j = std::countr_zero(diff);
    if (gray & diff) {
      for (int i = 0; i < n; ++i) row_sum[i] += a[i * n + j];
    } else {
      for (int i = 0; i < n; ++i) row_sum[i] -= a[i * n + j];
    }
    prev = gray;

    const double sign = ((n - std::popcount(gray)) & 1) ? -1.0 : 1.0;
    prefix[0] = row_sum[0];
    for (int i = 1; i < n; ++i) prefix[i] = prefix[i - 1] * row_sum[i];
    suffix[n - 1] = row_sum[n - 1];
    for (int i = n - 2; i >= 0; --i) suffix[i] = suffix[i + 1] * row_sum[i];

    total += sign * prefix[n - 1];

    omit[0] = sign * ((n > 1) ? suffix[1] : Complex(1.0, 0.0));
    for (int r = 1; r < n; ++r)
      omit[r] = sign * ((r + 1 < n) ? prefix[r - 1] * suffix[r + 1] : prefix[r - 1]);

    int n_cols = 0;
    for (int s = 0; s < n; ++s)
      if (gray & (1u << s)) cols[n_cols++] = s;
    for (int r = 0; r < n; ++r) {
      Complex* row = dperm + r * n;
      const Complex v = omit[r];
      for (int c = 0; c < n_cols; ++c) row[cols[c]] += v;
    }
  }
  return total;
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd& m, int size_cap) {
  if (m.rows() != m.cols()) throw ShapeError("permanent: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (n > size_cap || n > TransitionKernel::kMaxPhotons)
    throw CapacityError("permanent: order " + std::to_string(n) + " exceeds cap");
  if (n == 0) return Complex(1.0, 0.0);
  std::vector<Complex> buf(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) buf[static_cast<size_t>(i) * n + j] = m(i, j);
  return ryser(buf.data(), n);
}

void TransitionKernel::expand(const Eigen::MatrixXcd& u, const FockState& in,
                              const FockState& out) {
  const int n_modes = static_cast<int>(u.rows());
  if (u.cols() != n_modes) throw ShapeError("TransitionKernel: matrix must be square");
  if (in.n_modes() != n_modes || out.n_modes() != n_modes)
    throw ShapeError("TransitionKernel: state/matrix mode count mismatch");
  if (in.n_photons() != out.n_photons())
    throw ShapeError("TransitionKernel: photon number not conserved");

  m_ = in.n_photons();
  if (m_ > kMaxPhotons) throw CapacityError("TransitionKernel: photon number exceeds cap");

  row_modes_.clear();
  col_modes_.clear();
  double norm = 1.0;
  for (int i = 0; i < n_modes; ++i) {
    for (int r = 0; r < in[i]; ++r) row_modes_.push_back(i);
    for (int c = 0; c < out[i]; ++c) col_modes_.push_back(i);
    norm *= factorial(in[i]) * factorial(out[i]);
  }
  inv_norm_ = 1.0 / std::sqrt(norm);

  sub_.resize(static_cast<size_t>(m_) * m_);
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c)
      sub_[static_cast<size_t>(r) * m_ + c] = u(row_modes_[r], col_modes_[c]);
}

Complex TransitionKernel::amplitude(const Eigen::MatrixXcd& u, const FockState& in,
                                    const FockState& out) {
  expand(u, in, out);
  return ryser(sub_.data(), m_) * inv_norm_;
}

Complex TransitionKernel::amplitude_with_gradient(const Eigen::MatrixXcd& u,
                                                  const FockState& in, const FockState& out,
                                                  Complex w1, Eigen::MatrixXcd& g1, Complex w2,
                                                  Eigen::MatrixXcd& g2) {
  expand(u, in, out);
  dperm_.resize(static_cast<size_t>(m_) * m_);
  const Complex p = ryser_with_gradient(sub_.data(), m_, dperm_.data());
  for (int r = 0; r < m_; ++r) {
    for (int c = 0; c < m_; ++c) {
      const Complex d = dperm_[static_cast<size_t>(r) * m_ + c] * inv_norm_;
      g1(row_modes_[r], col_modes_[c]) += w1 * d;
      g2(row_modes_[r], col_modes_[c]) += w2 * d;
    }
  }
  return p * inv_norm_;
}

AmplitudeVector apply_mode_transform(const Eigen::MatrixXcd& u, const FockState& input) {
  auto basis = std::make_shared<FockBasis>(
      FockBasis::enumerate(input.n_modes(), input.n_photons()));
  return apply_mode_transform(u, input, std::move(basis));
}

AmplitudeVector apply_mode_transform(const Eigen::MatrixXcd& u, const FockState& input,
                                     std::shared_ptr<const FockBasis> out_basis) {
  if (u.rows() != u.cols()) throw ShapeError("apply_mode_transform: matrix must be square");
  if (u.rows() != input.n_modes())
    throw ShapeError("apply_mode_transform: matrix size does not match input modes");
  if (out_basis->n_modes() != input.n_modes() ||
      out_basis->n_photons() != input.n_photons())
    throw ShapeError("apply_mode_transform: basis does not match input state");

  TransitionKernel kernel;
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(out_basis->size()));
  for (std::size_t k = 0; k < out_basis->size(); ++k)
    amps(static_cast<Eigen::Index>(k)) = kernel.amplitude(u, input, out_basis->state(k));
  return AmplitudeVector{std::move(out_basis), std::move(amps)};
}

}  // namespace loqc
