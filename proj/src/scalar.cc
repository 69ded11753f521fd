// Copyright 2026 The mdp-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mdp/scalar.h"

#include <cctype>
#include <cstdlib>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

absl::Status BadScalar(std::string_view text) {
  return absl::InvalidArgumentError(
      absl::StrCat("cannot parse scalar \"", std::string(text), "\""));
}

mpz_class Pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

absl::StatusOr<Scalar> ParseScalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return BadScalar(text);

  Scalar result;
  size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) return BadScalar(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("zero denominator in \"", std::string(text), "\""));
    }
    result = Scalar(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    size_t e = s.find_first_of("eE");
    if (e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!AllDigits(exp_text) || exp_text.size() > 6) return BadScalar(text);
      exponent = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
      if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    size_t dot = mantissa.find('.');
    if (dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return BadScalar(text);
    if (!int_part.empty() && !AllDigits(int_part)) return BadScalar(text);
    if (!frac_part.empty() && !AllDigits(frac_part)) return BadScalar(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class value(digits, 10);
    if (exponent >= 0) {
      result = Scalar(value * Pow10(static_cast<unsigned long>(exponent)));
    } else {
      result = Scalar(value, Pow10(static_cast<unsigned long>(-exponent)));
      result.canonicalize();
    }
  }
  if (negative) result = -result;
  return result;
}

std::string ToString(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string ToDecimal(const Scalar& value, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale = Pow10(static_cast<unsigned long>(digits));
  mpz_class num = abs(value.get_num()) * scale;
  const mpz_class& den = value.get_den();
  mpz_class q = num / den;
  mpz_class r = num % den;
  if (2 * r >= den) ++q;
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits)) {
      body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<size_t>(digits), ".");
  }
  if (value < 0 && q != 0) body.insert(0, "-");
  return body;
}

double ToDouble(const Scalar& value) { return value.get_d(); }

Scalar Sum(const Vector& values) {
  Scalar total = 0;
  for (const Scalar& v : values) total += v;
  return total;
}

absl::StatusOr<Matrix> Matrix::FromRows(const std::vector<Vector>& rows,
                                        size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", rows[r].size(), " entries, expected ", cols));
    }
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::Identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::Row(size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::Column(size_t c) const {
  Vector out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::AppendRow(const Vector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  data_.insert(data_.end(), row.begin(), row.end());
  data_.resize((rows_ + 1) * cols_);
  ++rows_;
}

absl::StatusOr<Matrix> Multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot multiply ", a.rows(), "x", a.cols(), " by ", b.rows(), "x", b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

absl::StatusOr<Vector> Multiply(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot multiply ", a.rows(), "x", a.cols(), " by vector of length ", x.size()));
  }
  Vector out(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
  }
  return out;
}

}  // namespace mdp
