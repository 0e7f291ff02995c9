#include "pseudoatom/band_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pseudoatom/errors.hpp"

namespace pseudoatom::linalg {

  SymmetricBandMatrix::SymmetricBandMatrix(std::size_t n, std::size_t bandwidth)
      : n_(n), bw_(std::min(bandwidth, n == 0 ? 0 : n - 1)), data_((bw_ + 1) * n, 0.0) {}

  double SymmetricBandMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i < j) std::swap(i, j);
    if (i - j > bw_) return 0.0;
    return data_[(i - j) * n_ + j];
  }

  double& SymmetricBandMatrix::at(std::size_t i, std::size_t j) {
    if (i < j) std::swap(i, j);
    if (i >= n_ || i - j > bw_) throw std::out_of_range("band matrix element outside the band");
    return data_[(i - j) * n_ + j];
  }

  std::span<const double> SymmetricBandMatrix::diagonal(std::size_t d) const {
    if (d > bw_) throw std::out_of_range("diagonal outside the band");
    return std::span(data_).subspan(d * n_, n_ - d);
  }

  void SymmetricBandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) y[j] += data_[j] * x[j];
    for (std::size_t d = 1; d <= bw_; ++d) {
      const double* diag = data_.data() + d * n_;
      for (std::size_t j = 0; j + d < n_; ++j) {
        y[j + d] += diag[j] * x[j];
        y[j] += diag[j] * x[j + d];
      }
    }
  }

  double SymmetricBandMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
    std::vector<double> ay(n_);
    multiply(y, ay);
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) sum += x[i] * ay[i];
    return sum;
  }

  double SymmetricBandMatrix::max_abs() const {
    double m = 0.0;
    for (std::size_t d = 0; d <= bw_; ++d)
      for (double v : diagonal(d)) m = std::max(m, std::abs(v));
    return m;
  }

  double SymmetricBandMatrix::norm_inf() const {
    std::vector<double> rows(n_, 0.0);
    for (std::size_t d = 0; d <= bw_; ++d) {
      const auto diag = diagonal(d);
      for (std::size_t j = 0; j < diag.size(); ++j) {
        rows[j + d] += std::abs(diag[j]);
        if (d != 0) rows[j] += std::abs(diag[j]);
      }
    }
    return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
  }

  std::vector<double> SymmetricBandMatrix::dense() const {
    std::vector<double> out(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] = (*this)(i, j);
    return out;
  }

  SymmetricBandMatrix SymmetricBandMatrix::shifted(double sigma, const SymmetricBandMatrix& b) const {
    if (b.n_ != n_ || b.bw_ != bw_) throw std::invalid_argument("band matrix shapes differ");
    SymmetricBandMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += sigma * b.data_[i];
    return out;
  }

  void SymmetricBandMatrix::write(std::ostream& os) const {
    os << "# symmetric-band " << n_ << ' ' << bw_ << '\n';
    char buf[32];
    for (std::size_t d = 0; d <= bw_; ++d) {
      const auto diag = diagonal(d);
      for (std::size_t j = 0; j < diag.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", diag[j]);
        if (j) os << ' ';
        os << buf;
      }
      os << '\n';
    }
  }

  SymmetricBandMatrix SymmetricBandMatrix::read(std::istream& is) {
    // Skip free comment lines up to the header.
    std::string line;
    while (std::getline(is, line))
      if (line.rfind("# symmetric-band", 0) == 0) break;
    std::istringstream header(line);
    std::string hash, tag;
    std::size_t n = 0, bw = 0;
    if (!(header >> hash >> tag >> n >> bw) || tag != "symmetric-band")
      throw ConfigError("band matrix dump: bad header");
    if (bw >= n && n > 0) throw ConfigError("band matrix dump: bandwidth exceeds dimension");
    SymmetricBandMatrix m(n, bw);
    for (std::size_t d = 0; d <= bw; ++d)
      for (std::size_t j = 0; j + d < n; ++j)
        if (!(is >> m.data_[d * n + j])) throw ConfigError("band matrix dump: truncated data");
    is >> std::ws;
    return m;
  }

  BandCholesky::BandCholesky(const SymmetricBandMatrix& s)
      : n_(s.size()), bw_(s.bandwidth()), data_((s.bandwidth() + 1) * s.size()) {
    auto L = [&](std::size_t i, std::size_t j) -> double& { return data_[(i - j) * n_ + j]; };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = (i > bw_ ? i - bw_ : 0); j <= i; ++j) L(i, j) = s(i, j);

    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t lo = j > bw_ ? j - bw_ : 0;
      double diag = L(j, j);
      for (std::size_t p = lo; p < j; ++p) diag -= L(j, p) * L(j, p);
      if (!(diag > 0.0)) {
        std::ostringstream oss;
        oss << "overlap matrix is not positive definite (pivot " << j << " = " << diag << ")";
        throw FactorizationError(oss.str());
      }
      const double ljj = std::sqrt(diag);
      L(j, j) = ljj;
      const std::size_t hi = std::min(n_ - 1, j + bw_);
      for (std::size_t i = j + 1; i <= hi; ++i) {
        const std::size_t lo_i = i > bw_ ? i - bw_ : 0;
        double v = L(i, j);
        for (std::size_t p = std::max(lo, lo_i); p < j; ++p) v -= L(i, p) * L(j, p);
        L(i, j) = v / ljj;
      }
    }
  }

  void BandCholesky::solve_lower(std::span<double> b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double v = b[i];
      for (std::size_t j = (i > bw_ ? i - bw_ : 0); j < i; ++j) v -= l(i, j) * b[j];
      b[i] = v / l(i, i);
    }
  }

  void BandCholesky::solve_upper(std::span<double> y) const {
    for (std::size_t i = n_; i-- > 0;) {
      double v = y[i];
      const std::size_t hi = std::min(n_ - 1, i + bw_);
      for (std::size_t j = i + 1; j <= hi; ++j) v -= l(j, i) * y[j];
      y[i] = v / l(i, i);
    }
  }

  BandLU::BandLU(const SymmetricBandMatrix& m)
      : n_(m.size()), kl_(m.bandwidth()), ku_(2 * m.bandwidth()), ld_(kl_ + ku_ + 1),
        ab_(ld_ * m.size(), 0.0), pivots_(m.size()) {
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t lo = j > kl_ ? j - kl_ : 0;
      const std::size_t hi = std::min(n_ - 1, j + kl_);
      for (std::size_t i = lo; i <= hi; ++i) a(i, j) = m(i, j);
    }

    const double tiny = std::max(m.norm_inf(), 1.0) * std::numeric_limits<double>::epsilon();
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t last_row = std::min(n_ - 1, j + kl_);
      const std::size_t last_col = std::min(n_ - 1, j + ku_);
      std::size_t p = j;
      for (std::size_t i = j + 1; i <= last_row; ++i)
        if (std::abs(a(i, j)) > std::abs(a(p, j))) p = i;
      pivots_[j] = p;
      if (p != j)
        for (std::size_t c = j; c <= last_col; ++c) std::swap(a(j, c), a(p, c));
      if (a(j, j) == 0.0) a(j, j) = tiny;

      const double pivot = a(j, j);
      for (std::size_t i = j + 1; i <= last_row; ++i) {
        const double mult = a(i, j) / pivot;
        a(i, j) = mult;
        if (mult == 0.0) continue;
        for (std::size_t c = j + 1; c <= last_col; ++c) a(i, c) -= mult * a(j, c);
      }
    }
  }

  void BandLU::solve(std::span<double> b) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
      const std::size_t last_row = std::min(n_ - 1, j + kl_);
      for (std::size_t i = j + 1; i <= last_row; ++i) b[i] -= a(i, j) * b[j];
    }
    for (std::size_t i = n_; i-- > 0;) {
      double v = b[i];
      const std::size_t last_col = std::min(n_ - 1, i + ku_);
      for (std::size_t c = i + 1; c <= last_col; ++c) v -= a(i, c) * b[c];
      b[i] = v / a(i, i);
    }
  }

} // namespace pseudoatom::linalg
