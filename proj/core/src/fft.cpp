#include "convfno/fft.hpp"

#include <cmath>
#include <map>
#include <memory>

namespace convfno {
namespace fftdetail {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

int64_t next_pow2(int64_t n) {
    int64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct Plan {
    int64_t n = 0;
    // radix-2 tables (for n itself when pow2, or for the Bluestein length m)
    std::vector<cplx> roots;       // roots[j] = exp(-2*pi*i*j/len), j < len/2
    std::vector<int32_t> bitrev;   // permutation for len
    int64_t len = 0;
    // Bluestein extras (empty when n is a power of two)
    std::vector<cplx> chirp;       // exp(-i*pi*j^2/n), j < n
    std::vector<cplx> bfft;        // forward FFT of the padded reciprocal chirp
};

void build_radix2_tables(Plan& p, int64_t len) {
    p.len = len;
    p.roots.resize(static_cast<size_t>(len / 2));
    for (int64_t j = 0; j < len / 2; ++j) {
        double a = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(len);
        p.roots[j] = cplx(std::cos(a), std::sin(a));
    }
    p.bitrev.assign(static_cast<size_t>(len), 0);
    int bits = 0;
    while ((int64_t{1} << bits) < len) ++bits;
    for (int64_t i = 0; i < len; ++i) {
        int64_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (int64_t{1} << b)) r |= int64_t{1} << (bits - 1 - b);
        p.bitrev[i] = static_cast<int32_t>(r);
    }
}

// Radix-2, tables from plan; dir applied by conjugating twiddles.
void fft_pow2(cplx* a, const Plan& p, int dir) {
    const int64_t n = p.len;
    for (int64_t i = 0; i < n; ++i) {
        int64_t j = p.bitrev[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int64_t half = 1; half < n; half <<= 1) {
        const int64_t step = n / (half * 2);
        for (int64_t block = 0; block < n; block += half * 2) {
            for (int64_t j = 0; j < half; ++j) {
                cplx w = p.roots[j * step];
                if (dir > 0) w = std::conj(w);
                const cplx u = a[block + j];
                const cplx v = a[block + j + half] * w;
                a[block + j] = u + v;
                a[block + j + half] = u - v;
            }
        }
    }
}

std::shared_ptr<const Plan> make_plan(int64_t n) {
    auto plan = std::make_shared<Plan>();
    plan->n = n;
    if (is_pow2(n)) {
        build_radix2_tables(*plan, n);
        return plan;
    }
    // Bluestein: convolution length m >= 2n-1, power of two.
    const int64_t m = next_pow2(2 * n - 1);
    build_radix2_tables(*plan, m);
    plan->chirp.resize(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j) {
        // j^2 mod 2n keeps the phase argument small and accurate.
        int64_t q = (j * j) % (2 * n);
        double a = -kPi * static_cast<double>(q) / static_cast<double>(n);
        plan->chirp[j] = cplx(std::cos(a), std::sin(a));
    }
    std::vector<cplx> b(static_cast<size_t>(m), cplx(0, 0));
    for (int64_t j = 0; j < n; ++j) {
        const cplx v = std::conj(plan->chirp[j]);  // exp(+i*pi*j^2/n)
        b[j] = v;
        if (j > 0) b[m - j] = v;
    }
    fft_pow2(b.data(), *plan, -1);
    plan->bfft = std::move(b);
    return plan;
}

const Plan& plan_for(int64_t n) {
    thread_local std::map<int64_t, std::shared_ptr<const Plan>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_plan(n)).first;
    return *it->second;
}

void fft_bluestein(cplx* data, const Plan& p, int dir) {
    const int64_t n = p.n;
    const int64_t m = p.len;
    std::vector<cplx> a(static_cast<size_t>(m), cplx(0, 0));
    for (int64_t j = 0; j < n; ++j) {
        cplx c = p.chirp[j];
        if (dir > 0) c = std::conj(c);
        a[j] = data[j] * c;
    }
    fft_pow2(a.data(), p, -1);
    if (dir < 0) {
        for (int64_t j = 0; j < m; ++j) a[j] *= p.bfft[j];
    } else {
        // Reciprocal chirp for the inverse direction is the conjugate; its
        // forward FFT is conj(bfft) reversed, equivalently handled by
        // conjugating the whole convolution.
        for (int64_t j = 0; j < m; ++j) a[j] = std::conj(std::conj(a[j]) * p.bfft[j]);
    }
    fft_pow2(a.data(), p, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (int64_t k = 0; k < n; ++k) {
        cplx c = p.chirp[k];
        if (dir > 0) c = std::conj(c);
        data[k] = a[k] * inv_m * c;
    }
}

}  // namespace

void fft_1d(cplx* data, int64_t n, int dir) {
    if (n == 1) return;
    const Plan& p = plan_for(n);
    if (is_pow2(n))
        fft_pow2(data, p, dir);
    else
        fft_bluestein(data, p, dir);
}

void fft2_inplace(cplx* buf, int64_t h, int64_t w, int dir) {
    for (int64_t r = 0; r < h; ++r) fft_1d(buf + r * w, w, dir);
    std::vector<cplx> col(static_cast<size_t>(h));
    for (int64_t c = 0; c < w; ++c) {
        for (int64_t r = 0; r < h; ++r) col[r] = buf[r * w + c];
        fft_1d(col.data(), h, dir);
        for (int64_t r = 0; r < h; ++r) buf[r * w + c] = col[r];
    }
}

}  // namespace fftdetail

namespace {

void check_spatial(const Tensor& t, const char* where) {
    if (t.rank() < 2)
        throw std::invalid_argument(std::string(where) + ": needs trailing (H, W) axes, got rank " +
                                    std::to_string(t.rank()));
}

}  // namespace

Spectrum rfft2(const Tensor& field) {
    check_spatial(field, "rfft2");
    const int64_t w = field.dim(field.rank() - 1);
    const int64_t h = field.dim(field.rank() - 2);
    const int64_t wc = w / 2 + 1;
    const int64_t batch = field.numel() / (h * w);

    Spectrum spec;
    spec.height = h;
    spec.width = w;
    spec.shape = field.shape();
    spec.shape.back() = wc;
    spec.coeffs.resize(static_cast<size_t>(batch * h * wc));

    const double scale = 1.0 / static_cast<double>(h * w);
    std::vector<cplx> buf(static_cast<size_t>(h * w));
    const double* src = field.data();
    for (int64_t b = 0; b < batch; ++b) {
        for (int64_t i = 0; i < h * w; ++i) buf[i] = cplx(src[b * h * w + i], 0.0);
        fftdetail::fft2_inplace(buf.data(), h, w, -1);
        cplx* out = spec.coeffs.data() + b * h * wc;
        for (int64_t r = 0; r < h; ++r)
            for (int64_t c = 0; c < wc; ++c) out[r * wc + c] = buf[r * w + c] * scale;
    }
    return spec;
}

Tensor irfft2(const Spectrum& spec) {
    const int64_t h = spec.height, w = spec.width, wc = spec.cols();
    if (h < 1 || w < 1 || static_cast<int64_t>(spec.coeffs.size()) % (h * wc) != 0)
        throw std::invalid_argument("irfft2: coefficient count inconsistent with spatial shape");
    const int64_t batch = static_cast<int64_t>(spec.coeffs.size()) / (h * wc);

    Shape out_shape = spec.shape;
    out_shape.back() = w;
    Tensor out(out_shape);
    double* dst = out.mut();

    std::vector<cplx> buf(static_cast<size_t>(h * w));
    for (int64_t b = 0; b < batch; ++b) {
        const cplx* in = spec.coeffs.data() + b * h * wc;
        for (int64_t r = 0; r < h; ++r) {
            for (int64_t c = 0; c < wc; ++c) buf[r * w + c] = in[r * wc + c];
            for (int64_t c = wc; c < w; ++c)
                buf[r * w + c] = std::conj(in[((h - r) % h) * wc + (w - c)]);
        }
        fftdetail::fft2_inplace(buf.data(), h, w, +1);
        for (int64_t i = 0; i < h * w; ++i) dst[b * h * w + i] = buf[i].real();
    }
    return out;
}

Tensor irfft2(const Spectrum& spec, int64_t height, int64_t width) {
    if (spec.height != height || spec.width != width)
        throw std::invalid_argument("irfft2: requested shape (" + std::to_string(height) + "," +
                                    std::to_string(width) + ") does not match spectrum (" +
                                    std::to_string(spec.height) + "," + std::to_string(spec.width) + ")");
    return irfft2(spec);
}

Spectrum irfft2_adjoint(const Tensor& field_grad) {
    Spectrum g = rfft2(field_grad);
    const int64_t h = g.height, w = g.width, wc = g.cols();
    const int64_t batch = g.batch();
    const double hw = static_cast<double>(h * w);
    for (int64_t b = 0; b < batch; ++b) {
        cplx* p = g.coeffs.data() + b * h * wc;
        for (int64_t r = 0; r < h; ++r) {
            for (int64_t c = 0; c < wc; ++c) {
                const bool self_paired = (c == 0) || (w % 2 == 0 && c == w / 2);
                p[r * wc + c] *= self_paired ? hw : 2.0 * hw;
            }
        }
    }
    return g;
}

Tensor rfft2_adjoint(const Spectrum& coeff_grad) {
    const int64_t h = coeff_grad.height, w = coeff_grad.width, wc = coeff_grad.cols();
    const int64_t batch = coeff_grad.batch();
    Shape out_shape = coeff_grad.shape;
    out_shape.back() = w;
    Tensor out(out_shape);
    double* dst = out.mut();

    const double scale = 1.0 / static_cast<double>(h * w);
    std::vector<cplx> buf(static_cast<size_t>(h * w));
    for (int64_t b = 0; b < batch; ++b) {
        const cplx* in = coeff_grad.coeffs.data() + b * h * wc;
        for (int64_t r = 0; r < h; ++r) {
            for (int64_t c = 0; c < wc; ++c) buf[r * w + c] = in[r * wc + c];
            for (int64_t c = wc; c < w; ++c) buf[r * w + c] = cplx(0, 0);  // no Hermitian pairing
        }
        fftdetail::fft2_inplace(buf.data(), h, w, +1);
        for (int64_t i = 0; i < h * w; ++i) dst[b * h * w + i] = buf[i].real() * scale;
    }
    return out;
}

}  // namespace convfno
