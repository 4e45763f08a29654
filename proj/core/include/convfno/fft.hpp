#pragma once

#include <complex>
#include <vector>

#include "convfno/tensor.hpp"

namespace convfno {

using cplx = std::complex<double>;

/// Half-plane Fourier coefficients of a real field, per-mode normalized:
/// coeffs[k] = (1/(H*W)) * sum_x field(x) * exp(-2*pi*i*k.x/m). The trailing
/// axis stores columns k_w = 0..W/2; rows carry all H frequencies. The DC
/// entry therefore equals the spatial mean of the field.
struct Spectrum {
    Shape shape;       // full shape, trailing dims (H, W/2+1)
    int64_t height = 0;  // spatial H
    int64_t width = 0;   // spatial W (pre-truncation)
    std::vector<cplx> coeffs;

    int64_t cols() const { return width / 2 + 1; }
    int64_t batch() const { return static_cast<int64_t>(coeffs.size()) / (height * cols()); }
    cplx at(int64_t b, int64_t row, int64_t col) const {
        return coeffs[(b * height + row) * cols() + col];
    }
};

/// Real-to-complex 2D FFT over the two trailing axes of a tensor of rank >= 2.
Spectrum rfft2(const Tensor& field);

/// Exact inverse of rfft2 under the per-mode convention. Accepts any stored
/// coefficients; columns above W/2 are reconstructed by Hermitian symmetry
/// and the real part of the synthesis is returned.
Tensor irfft2(const Spectrum& spec);

/// irfft2 with an explicit spatial shape check (errors on mismatch).
Tensor irfft2(const Spectrum& spec, int64_t height, int64_t width);

/// Adjoint of irfft2 as a real-linear map from stored (Re,Im) coefficient
/// pairs to the real field: H*W * rfft2(g) with interior columns doubled.
Spectrum irfft2_adjoint(const Tensor& field_grad);

/// Adjoint of rfft2: (1/(H*W)) * Re(unpaired inverse synthesis), i.e. the
/// transpose of the forward map with stored coefficients treated as
/// independent real pairs.
Tensor rfft2_adjoint(const Spectrum& coeff_grad);

namespace fftdetail {
/// In-place complex FFT, any length (iterative radix-2 for powers of two,
/// Bluestein otherwise). dir = -1 forward exp(-i...), +1 inverse exp(+i...);
/// no normalization in either direction.
void fft_1d(cplx* data, int64_t n, int dir);
/// Unnormalized 2D transform of a row-major H x W complex buffer.
void fft2_inplace(cplx* buf, int64_t h, int64_t w, int dir);
}  // namespace fftdetail

}  // namespace convfno
