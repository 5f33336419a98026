// Copyright 2026 The Whichway Authors
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

#include "whichway/channels.hpp"

#include <cmath>
#include <random>
#include <string>

namespace whichway {

namespace {

constexpr double kBlockHermiticityTolerance = 1e-9;

}  // namespace

// ---------------------------------------------------------------------------
// Unitary

Unitary::Unitary(ComplexMatrix matrix, double tolerance) : matrix_(std::move(matrix)) {
    const double err = max_abs_diff(matrix_.adjoint() * matrix_, ComplexMatrix::identity(matrix_.dim()));
    if (err > tolerance) {
        throw BadParameter("Unitary: |U^dag U - I| = " + std::to_string(err));
    }
}

Unitary random_unitary(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = cplx(re, im);
        }
    }
    // Modified Gram-Schmidt over columns, two passes.
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(g(i, k)) * g(i, j);
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    g(i, j) -= proj * g(i, k);
                }
            }
        }
        double n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            n += std::norm(g(i, j));
        }
        n = std::sqrt(n);
        for (std::size_t i = 0; i < dim; ++i) {
            g(i, j) /= n;
        }
    }
    return Unitary(std::move(g));
}

ComplexMatrix swap_operator(std::size_t dim_a, std::size_t dim_b) {
    ComplexMatrix p(dim_a * dim_b);
    for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t b = 0; b < dim_b; ++b) {
            p(b * dim_a + a, a * dim_b + b) = 1.0;
        }
    }
    return p;
}

ComplexMatrix swap_factors(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b) {
    if (m.dim() != dim_a * dim_b) {
        throw DimMismatch("swap_factors: operator dim " + std::to_string(m.dim()) + " is not " +
                          std::to_string(dim_a) + "*" + std::to_string(dim_b));
    }
    const ComplexMatrix p = swap_operator(dim_a, dim_b);
    return p * m * p.adjoint();
}

// ---------------------------------------------------------------------------
// StinespringChannel

StinespringChannel::StinespringChannel(Unitary unitary, DensityMatrix env_state, std::size_t sys_dim)
    : unitary_(std::move(unitary)), env_state_(std::move(env_state)), sys_dim_(sys_dim), env_dim_(env_state_.dim()) {
    if (sys_dim_ == 0 || unitary_.dim() != sys_dim_ * env_dim_) {
        throw DimMismatch("StinespringChannel: unitary dim " + std::to_string(unitary_.dim()) + " != " +
                          std::to_string(sys_dim_) + " (system) * " + std::to_string(env_dim_) + " (environment)");
    }
}

StinespringChannel StinespringChannel::unitary_channel(const Unitary &u) {
    return StinespringChannel(u, DensityMatrix(ComplexMatrix::identity(1)), u.dim());
}

StinespringChannel StinespringChannel::from_env_first(const Unitary &u_env_sys, DensityMatrix env_state) {
    const std::size_t de = env_state.dim();
    if (de == 0 || u_env_sys.dim() % de != 0) {
        throw DimMismatch("from_env_first: environment dim " + std::to_string(de) + " does not divide " +
                          std::to_string(u_env_sys.dim()));
    }
    const std::size_t ds = u_env_sys.dim() / de;
    return StinespringChannel(Unitary(swap_factors(u_env_sys.matrix(), de, ds)), std::move(env_state), ds);
}

std::vector<ComplexMatrix> StinespringChannel::kraus_operators() const {
    const auto eig = herm_eig(env_state_.matrix());
    const ComplexMatrix &u = unitary_.matrix();
    const std::size_t ds = sys_dim_;
    const std::size_t de = env_dim_;
    std::vector<ComplexMatrix> kraus;
    for (std::size_t n = 0; n < de; ++n) {
        const double p = eig.values[n];
        if (p <= 0.0) {
            continue;
        }
        const double w = std::sqrt(p);
        for (std::size_t m = 0; m < de; ++m) {
            ComplexMatrix k(ds);
            for (std::size_t i = 0; i < ds; ++i) {
                for (std::size_t j = 0; j < ds; ++j) {
                    cplx s = 0.0;
                    for (std::size_t e = 0; e < de; ++e) {
                        s += u(i * de + m, j * de + e) * eig.vectors(e, n);
                    }
                    k(i, j) = w * s;
                }
            }
            kraus.push_back(std::move(k));
        }
    }
    return kraus;
}

DensityMatrix apply_channel(const StinespringChannel &ch, const DensityMatrix &rho) {
    if (rho.dim() != ch.sys_dim()) {
        throw DimMismatch("apply_channel: state dim " + std::to_string(rho.dim()) + ", channel input dim " +
                          std::to_string(ch.sys_dim()));
    }
    const ComplexMatrix &u = ch.unitary().matrix();
    const ComplexMatrix joint = u * tensor(rho.matrix(), ch.env_state().matrix()) * u.adjoint();
    const std::size_t keep[] = {0};
    ComplexMatrix out = partial_trace(joint, SubsystemDims({ch.sys_dim(), ch.env_dim()}), keep);
    return DensityMatrix(std::move(out), rho.dims(), rho.tolerance());
}

DensityMatrix apply_channel_extended(const StinespringChannel &ch, const DensityMatrix &rho_sys_anc) {
    const auto &dims = rho_sys_anc.dims();
    if (dims[0] != ch.sys_dim()) {
        throw DimMismatch("apply_channel_extended: first factor has dim " + std::to_string(dims[0]) +
                          ", channel input dim " + std::to_string(ch.sys_dim()));
    }
    const std::size_t anc = rho_sys_anc.dim() / ch.sys_dim();
    const ComplexMatrix id_anc = ComplexMatrix::identity(anc);
    ComplexMatrix out(rho_sys_anc.dim());
    for (const auto &k : ch.kraus_operators()) {
        const ComplexMatrix kk = tensor(k, id_anc);
        out += kk * rho_sys_anc.matrix() * kk.adjoint();
    }
    return DensityMatrix(std::move(out), dims, rho_sys_anc.tolerance());
}

// ---------------------------------------------------------------------------
// SuperOp

ComplexMatrix matrix_unit(std::size_t d, std::size_t k, std::size_t l) {
    ComplexMatrix e(d);
    e(k, l) = 1.0;
    return e;
}

std::vector<cplx> vec(const ComplexMatrix &x) {
    const std::size_t d = x.dim();
    std::vector<cplx> v(d * d);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t k = 0; k < d; ++k) {
            v[k + l * d] = x(k, l);
        }
    }
    return v;
}

ComplexMatrix unvec(std::size_t d, std::span<const cplx> v) {
    if (v.size() != d * d) {
        throw DimMismatch("unvec: length " + std::to_string(v.size()) + " for d = " + std::to_string(d));
    }
    ComplexMatrix x(d);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t k = 0; k < d; ++k) {
            x(k, l) = v[k + l * d];
        }
    }
    return x;
}

SuperOp::SuperOp(std::size_t d, ComplexMatrix matrix) : d_(d), matrix_(std::move(matrix)) {
    if (matrix_.dim() != d_ * d_) {
        throw DimMismatch("SuperOp: matrix dim " + std::to_string(matrix_.dim()) + " for d = " + std::to_string(d_));
    }
}

SuperOp SuperOp::from_map(std::size_t d, const std::function<ComplexMatrix(const ComplexMatrix &)> &map) {
    ComplexMatrix s(d * d);
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t k = 0; k < d; ++k) {
            const ComplexMatrix image = map(matrix_unit(d, k, l));
            if (image.dim() != d) {
                throw DimMismatch("SuperOp::from_map: image has dim " + std::to_string(image.dim()));
            }
            const auto column = vec(image);
            for (std::size_t r = 0; r < d * d; ++r) {
                s(r, k + l * d) = column[r];
            }
        }
    }
    return SuperOp(d, std::move(s));
}

ComplexMatrix SuperOp::apply(const ComplexMatrix &x) const {
    if (x.dim() != d_) {
        throw DimMismatch("SuperOp::apply: operand dim " + std::to_string(x.dim()) + " for d = " + std::to_string(d_));
    }
    const auto v = vec(x);
    std::vector<cplx> out(d_ * d_);
    for (std::size_t r = 0; r < d_ * d_; ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < d_ * d_; ++c) {
            s += matrix_(r, c) * v[c];
        }
        out[r] = s;
    }
    return unvec(d_, out);
}

SuperOp superop_of_channel(const StinespringChannel &ch) {
    const ComplexMatrix &u = ch.unitary().matrix();
    const SubsystemDims dims({ch.sys_dim(), ch.env_dim()});
    const std::size_t keep[] = {0};
    return SuperOp::from_map(ch.sys_dim(), [&](const ComplexMatrix &x) {
        return partial_trace(u * tensor(x, ch.env_state().matrix()) * u.adjoint(), dims, keep);
    });
}

ComplexMatrix choi_matrix(const SuperOp &s) {
    const std::size_t d = s.d();
    ComplexMatrix choi(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            choi += tensor(matrix_unit(d, k, l), s.apply(matrix_unit(d, k, l)));
        }
    }
    return choi;
}

bool is_completely_positive(const SuperOp &s, double tolerance) {
    const ComplexMatrix choi = choi_matrix(s);
    if (choi.hermiticity_error() > tolerance) {
        return false;
    }
    return herm_eig(choi).values.back() >= -tolerance;
}

bool is_trace_preserving(const SuperOp &s, double tolerance) {
    const std::size_t d = s.d();
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            const cplx expected = k == l ? 1.0 : 0.0;
            if (std::abs(s.apply(matrix_unit(d, k, l)).trace() - expected) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// BlockChannel

BlockChannel::BlockChannel(SuperOp l00, SuperOp l01, SuperOp l10, SuperOp l11)
    : blocks_{std::move(l00), std::move(l01), std::move(l10), std::move(l11)} {
    for (const auto &b : blocks_) {
        if (b.d() != blocks_[0].d()) {
            throw DimMismatch("BlockChannel: blocks act on different spin dimensions");
        }
    }
}

void BlockChannel::validate() const {
    for (std::size_t i : {0u, 1u}) {
        const SuperOp &diag = block(i, i);
        if (!is_completely_positive(diag) || !is_trace_preserving(diag)) {
            throw BadParameter("BlockChannel: Lambda_" + std::to_string(i) + std::to_string(i) + " is not CPTP");
        }
    }
    const std::size_t d = spin_dim();
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            const ComplexMatrix e = matrix_unit(d, k, l);
            const ComplexMatrix lhs = block(1, 0).apply(e);
            const ComplexMatrix rhs = block(0, 1).apply(e.adjoint()).adjoint();
            if (max_abs_diff(lhs, rhs) > kBlockHermiticityTolerance) {
                throw BadParameter("BlockChannel: Lambda_10(s) != Lambda_01(s^dag)^dag");
            }
        }
    }
}

BlockChannel extract_block_channel(const Unitary &u0, const Unitary &u1, const DensityMatrix &detector_in) {
    const std::size_t dd = detector_in.dims()[0];
    const std::size_t anc = detector_in.dim() / dd;
    if (u0.dim() != u1.dim()) {
        throw DimMismatch("extract_block_channel: path unitaries have dims " + std::to_string(u0.dim()) + " and " +
                          std::to_string(u1.dim()));
    }
    if (u0.dim() % dd != 0) {
        throw DimMismatch("extract_block_channel: detector dim " + std::to_string(dd) +
                          " does not divide unitary dim " + std::to_string(u0.dim()));
    }
    const std::size_t ds = u0.dim() / dd;
    const ComplexMatrix id_anc = ComplexMatrix::identity(anc);
    const std::array<ComplexMatrix, 2> u{tensor(u0.matrix(), id_anc), tensor(u1.matrix(), id_anc)};
    const SubsystemDims dims({ds, dd * anc});
    const std::size_t keep[] = {0};

    auto block = [&](std::size_t i, std::size_t j) {
        const ComplexMatrix uj_dag = u[j].adjoint();
        return SuperOp::from_map(ds, [&](const ComplexMatrix &x) {
            return partial_trace(u[i] * tensor(x, detector_in.matrix()) * uj_dag, dims, keep);
        });
    };
    return BlockChannel(block(0, 0), block(0, 1), block(1, 0), block(1, 1));
}

SuperOp special_channel(SpecialChannelKind kind, std::size_t d, const std::optional<ComplexMatrix> &sigma) {
    if (d == 0) {
        throw BadParameter("special_channel: d must be positive");
    }
    switch (kind) {
        case SpecialChannelKind::identity:
            return SuperOp(d, ComplexMatrix::identity(d * d));
        case SpecialChannelKind::transpose:
            return SuperOp::from_map(d, [d](const ComplexMatrix &x) {
                return x.transpose() * cplx(1.0 / static_cast<double>(d));
            });
        case SpecialChannelKind::constant: {
            if (!sigma) {
                throw BadParameter("special_channel: constant channel needs an output operator");
            }
            if (sigma->dim() != d) {
                throw DimMismatch("special_channel: output operator has dim " + std::to_string(sigma->dim()));
            }
            if (sigma->hermiticity_error() > kDefaultTolerance ||
                std::abs(sigma->trace() - 1.0) > kDefaultTolerance) {
                throw BadParameter("special_channel: constant output must be unit-trace Hermitian");
            }
            const ComplexMatrix out = *sigma;
            return SuperOp::from_map(d, [&out](const ComplexMatrix &x) { return out * x.trace(); });
        }
    }
    throw BadParameter("special_channel: unknown kind");
}

}  // namespace whichway
