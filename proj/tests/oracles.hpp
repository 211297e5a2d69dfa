// Independent reference implementations used only by tests. Everything here
// recomputes results through a different route than the library code it
// checks.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubo/instance.hpp"

namespace oracle {

// Term-by-term energy evaluation straight off the term maps, no adjacency
// structures involved.
inline double naive_energy(const hubo::HuboInstance& inst,
                           const hubo::SpinConfig& s) {
  double e = inst.offset();
  for (const auto& [i, h] : inst.linear_terms()) e += h * s[i];
  for (const auto& [k, j] : inst.quadratic_terms()) {
    double prod = j;
    for (int v : k) prod *= s[v];
    e += prod;
  }
  for (const auto& [k, c] : inst.cubic_terms()) {
    double prod = c;
    for (int v : k) prod *= s[v];
    e += prod;
  }
  return e;
}

inline hubo::SpinConfig config_from_index(int n, std::uint64_t m) {
  hubo::SpinConfig s(n);
  for (int i = 0; i < n; ++i) s[i] = (m >> i) & 1 ? -1 : +1;
  return s;
}

// Full exhaustive scan with fresh evaluations; lexicographic-smallest
// bitstring among exact ties.
inline std::pair<hubo::SpinConfig, double> exhaustive_minimum(
    const hubo::HuboInstance& inst) {
  const int n = inst.num_vars();
  hubo::SpinConfig best;
  double best_e = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const auto s = config_from_index(n, m);
    const double e = naive_energy(inst, s);
    if (m == 0 || e < best_e || (e == best_e && s.bits_less(best))) {
      best = s;
      best_e = e;
    }
  }
  return {best, best_e};
}

// ---- dense statevector oracle ------------------------------------------

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;  // row-major dense

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), ca = a[0].size();
  const std::size_t rb = b.size(), cb = b[0].size();
  Matrix out(ra * rb, std::vector<Complex>(ca * cb, 0.0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l)
          out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Matrix out(n, std::vector<Complex>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i][p];
      if (aip == Complex{}) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += aip * b[p][j];
    }
  return out;
}

// Scaling-and-squaring Taylor series; independent of any closed-form Pauli
// rotation identity.
inline Matrix expm(const Matrix& a) {
  const std::size_t n = a.size();
  double max_abs = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) max_abs = std::max(max_abs, std::abs(v));
  int squarings = 0;
  double scale = 1.0;
  while (max_abs * scale > 0.25) {
    scale /= 2.0;
    ++squarings;
  }
  Matrix scaled(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled[i][j] = a[i][j] * scale;

  Matrix result = identity(n);
  Matrix term = identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, scaled);
    for (auto& row : term)
      for (auto& v : row) v /= static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) result = matmul(result, result);
  return result;
}

inline Matrix pauli(char p) {
  const Complex i{0.0, 1.0};
  switch (p) {
    case 'I': return {{1, 0}, {0, 1}};
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
  }
  throw std::invalid_argument("bad pauli");
}

// N-qubit operator for a Pauli assignment {qubit -> X/Y/Z}; qubit 0 is the
// least significant bit, so it sits rightmost in the Kronecker product.
inline Matrix pauli_string_matrix(int num_qubits, const std::map<int, char>& ops) {
  Matrix m = {{1.0}};
  for (int q = num_qubits - 1; q >= 0; --q) {
    const auto it = ops.find(q);
    m = kron(m, pauli(it == ops.end() ? 'I' : it->second));
  }
  return m;
}

inline std::vector<Complex> apply(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline double fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::abs(overlap);
}

// ---- tiny LP reader -----------------------------------------------------

// Parses the objective section of an LP file into name -> coefficient plus a
// constant, enough to re-evaluate objectives independently.
struct LpObjective {
  std::map<std::string, double> coeffs;
  double constant = 0.0;
};

inline LpObjective parse_lp_objective(const std::string& text) {
  const auto obj_pos = text.find("obj:");
  const auto end_pos = text.find("Subject To");
  if (obj_pos == std::string::npos || end_pos == std::string::npos)
    throw std::runtime_error("missing objective or constraint section");
  std::istringstream in(text.substr(obj_pos + 4, end_pos - obj_pos - 4));
  LpObjective obj;
  double sign = 1.0;
  double pending = 1.0;
  bool have_number = false;
  std::string token;
  while (in >> token) {
    if (token == "+") {
      sign = 1.0;
    } else if (token == "-") {
      sign = -1.0;
    } else if ((token[0] >= '0' && token[0] <= '9') || token[0] == '.') {
      pending = std::stod(token);
      have_number = true;
    } else {
      obj.coeffs[token] += sign * (have_number ? pending : 1.0);
      sign = 1.0;
      pending = 1.0;
      have_number = false;
    }
  }
  if (have_number) obj.constant += sign * pending;  // trailing constant
  return obj;
}

}  // namespace oracle
