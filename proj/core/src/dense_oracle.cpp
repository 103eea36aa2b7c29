// Copyright 2026 The entdepth Authors
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

#include "entdepth/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entdepth {

DenseState DenseState::zero_state(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("dense oracle supports 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    DenseState s;
    s.n_ = n_qubits;
    s.amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
}

double DenseState::norm() const {
    double sum = 0.0;
    for (const Complex &a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void DenseState::apply(const Matrix4 &unitary, std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_ || i == j) {
        throw std::invalid_argument("dense gate needs two distinct in-range qubits");
    }
    const std::size_t mi = std::size_t{1} << i, mj = std::size_t{1} << j;
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (base & (mi | mj)) {
            continue;
        }
        const std::size_t idx[4] = {base, base | mi, base | mj, base | mi | mj};
        Complex in[4], out[4];
        for (std::size_t k = 0; k < 4; ++k) {
            in[k] = amps_[idx[k]];
        }
        for (std::size_t r = 0; r < 4; ++r) {
            out[r] = 0.0;
            for (std::size_t c = 0; c < 4; ++c) {
                out[r] += unitary(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
        }
        for (std::size_t k = 0; k < 4; ++k) {
            amps_[idx[k]] = out[k];
        }
    }
}

void DenseState::apply_pauli(const std::vector<bool> &xs, const std::vector<bool> &zs, bool minus) {
    std::size_t xmask = 0, zmask = 0, ycount = 0;
    for (std::size_t q = 0; q < n_; ++q) {
        if (xs[q]) {
            xmask |= std::size_t{1} << q;
        }
        if (zs[q]) {
            zmask |= std::size_t{1} << q;
        }
        if (xs[q] && zs[q]) {
            ++ycount;
        }
    }
    // P = i^{#Y} X^x Z^z (Y = i X Z); X^x Z^z |b> = (-1)^{z.b} |b ^ x>.
    static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex global = kPowers[(ycount + (minus ? 2 : 0)) % 4];
    std::vector<Complex> out(amps_.size());
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        const bool odd = __builtin_parityll(static_cast<unsigned long long>(b & zmask));
        out[b ^ xmask] = global * (odd ? -amps_[b] : amps_[b]);
    }
    amps_ = std::move(out);
}

double DenseState::probability_zero(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("dense measurement qubit out of range");
    }
    const std::size_t m = std::size_t{1} << q;
    double p0 = 0.0;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if (!(b & m)) {
            p0 += std::norm(amps_[b]);
        }
    }
    return p0;
}

void DenseState::project(std::size_t q, bool value) {
    const std::size_t m = std::size_t{1} << q;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        if (static_cast<bool>(b & m) != value) {
            amps_[b] = 0.0;
        }
    }
    const double n = norm();
    if (n < 1e-12) {
        throw std::logic_error("projection onto a zero-probability outcome");
    }
    for (Complex &a : amps_) {
        a /= n;
    }
}

Matrix4 pauli_matrix(PauliPattern pattern, bool minus) {
    using Matrix2 = Eigen::Matrix2cd;
    auto single = [](bool x, bool z) {
        Matrix2 m;
        if (x && z) {
            m << 0, Complex(0, -1), Complex(0, 1), 0;
        } else if (x) {
            m << 0, 1, 1, 0;
        } else if (z) {
            m << 1, 0, 0, -1;
        } else {
            m << 1, 0, 0, 1;
        }
        return m;
    };
    const Matrix2 first = single(pattern_x1(pattern), pattern_z1(pattern));
    const Matrix2 second = single(pattern_x2(pattern), pattern_z2(pattern));
    // Index = bit1 + 2 * bit2, so the second qubit is the outer factor.
    Matrix4 out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.block<2, 2>(2 * a, 2 * b) = second(a, b) * first;
        }
    }
    return minus ? Matrix4(-out) : out;
}

Matrix4 clifford_to_unitary(const TwoQubitClifford &gate) {
    const auto &images = gate.images();
    auto image = [&](std::size_t k) { return pauli_matrix(images[k], (gate.sign_flips() >> k) & 1u); };
    const Matrix4 projector =
        0.25 * (Matrix4::Identity() + image(1)) * (Matrix4::Identity() + image(3));
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < 4; ++c) {
        if (projector.col(c).norm() > projector.col(best).norm()) {
            best = c;
        }
    }
    const Eigen::Vector4cd v0 = projector.col(best).normalized();
    Matrix4 u;
    for (int b = 0; b < 4; ++b) {
        Eigen::Vector4cd v = v0;
        if (b & 1) {
            v = image(0) * v;
        }
        if (b & 2) {
            v = image(2) * v;
        }
        u.col(b) = v;
    }
    return u;
}

double oracle_entropy(const DenseState &state, const QubitSet &subset) {
    const std::size_t n = state.n_qubits();
    if (subset.empty()) {
        throw std::invalid_argument("oracle entropy needs a nonempty subset");
    }
    subset.check_within(n);
    if (subset.size() == n) {
        return 0.0;
    }
    const QubitSet other = subset.complement(n);
    const QubitSet &side = subset.size() <= other.size() ? subset : other;
    const QubitSet &rest = subset.size() <= other.size() ? other : subset;

    const std::size_t rows = std::size_t{1} << side.size();
    const std::size_t cols = std::size_t{1} << rest.size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const auto &amps = state.amplitudes();
    for (std::size_t b = 0; b < amps.size(); ++b) {
        std::size_t r = 0, c = 0, k = 0;
        for (Qubit q : side) {
            r |= ((b >> q) & 1u) << k++;
        }
        k = 0;
        for (Qubit q : rest) {
            c |= ((b >> q) & 1u) << k++;
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[b];
    }
    const Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double lambda = solver.eigenvalues()(k);
        if (lambda > 1e-12) {
            entropy -= lambda * std::log2(lambda);
        }
    }
    return entropy;
}

DenseState dense_from_tableau(const StabilizerTableau &tableau) {
    const std::size_t n = tableau.n_qubits();
    DenseState base = DenseState::zero_state(n);
    // Some basis state has nonzero overlap with any stabilizer state.
    for (std::size_t start = 0; start < (std::size_t{1} << n); ++start) {
        DenseState s = base;
        std::fill(s.amplitudes().begin(), s.amplitudes().end(), Complex{0.0, 0.0});
        s.amplitudes()[start] = 1.0;
        for (std::size_t g = 0; g < n; ++g) {
            DenseState image = s;
            std::vector<bool> xs(n), zs(n);
            for (std::size_t q = 0; q < n; ++q) {
                xs[q] = tableau.x(g, q);
                zs[q] = tableau.z(g, q);
            }
            image.apply_pauli(xs, zs, tableau.sign(g));
            for (std::size_t b = 0; b < s.amplitudes().size(); ++b) {
                s.amplitudes()[b] = 0.5 * (s.amplitudes()[b] + image.amplitudes()[b]);
            }
        }
        const double nrm = s.norm();
        if (nrm > 1e-6) {
            for (Complex &a : s.amplitudes()) {
                a /= nrm;
            }
            return s;
        }
    }
    throw std::logic_error("stabilizer projection vanished on every basis state");
}

std::size_t DenseEntropy::entropy(const QubitSet &subset) const {
    std::uint32_t mask = 0;
    for (Qubit q : subset) {
        mask |= 1u << q;
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(mask); it != cache_.end()) {
            return it->second;
        }
    }
    const double s = oracle_entropy(state_, subset);
    const double rounded = std::round(s);
    if (std::abs(s - rounded) > 1e-9) {
        throw std::logic_error("dense entropy " + std::to_string(s) + " is not an integer");
    }
    const auto value = static_cast<std::size_t>(rounded);
    std::lock_guard lock(mutex_);
    cache_.emplace(mask, value);
    return value;
}

}  // namespace entdepth
