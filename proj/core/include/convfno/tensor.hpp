#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace convfno {

using Shape = std::vector<int64_t>;

inline int64_t shape_numel(const Shape& s) {
    int64_t n = 1;
    for (int64_t e : s) n *= e;
    return n;
}

inline std::string shape_str(const Shape& s) {
    std::string out = "[";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

/// Dense row-major tensor of 64-bit floats. Copies are cheap: the buffer is
/// shared and treated as immutable once its producing op has written it.
/// mut() gives writable access, copying first if the buffer is shared.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        validate();
        buf_ = std::make_shared<std::vector<double>>(static_cast<size_t>(shape_numel(shape_)), 0.0);
    }

    static Tensor full(Shape shape, double value) {
        Tensor t(std::move(shape));
        std::fill(t.mut(), t.mut() + t.numel(), value);
        return t;
    }

    static Tensor from(Shape shape, std::vector<double> values) {
        Tensor t;
        t.shape_ = std::move(shape);
        t.validate();
        if (shape_numel(t.shape_) != static_cast<int64_t>(values.size()))
            throw std::invalid_argument("Tensor::from: shape " + shape_str(t.shape_) +
                                        " does not match " + std::to_string(values.size()) + " values");
        t.buf_ = std::make_shared<std::vector<double>>(std::move(values));
        return t;
    }

    static Tensor scalar(double v) { return full({1}, v); }

    bool defined() const { return static_cast<bool>(buf_); }
    const Shape& shape() const { return shape_; }
    size_t rank() const { return shape_.size(); }
    int64_t dim(size_t i) const { return shape_.at(i); }
    int64_t numel() const { return buf_ ? static_cast<int64_t>(buf_->size()) : 0; }

    const double* data() const { return buf_->data(); }

    double* mut() {
        if (buf_.use_count() > 1) buf_ = std::make_shared<std::vector<double>>(*buf_);
        return buf_->data();
    }

    double operator[](int64_t i) const { return (*buf_)[static_cast<size_t>(i)]; }

    // 4-D accessor for the batch x channel x H x W layout.
    int64_t idx4(int64_t b, int64_t c, int64_t y, int64_t x) const {
        return ((b * shape_[1] + c) * shape_[2] + y) * shape_[3] + x;
    }
    double at4(int64_t b, int64_t c, int64_t y, int64_t x) const { return (*buf_)[idx4(b, c, y, x)]; }

    Tensor reshaped(Shape new_shape) const {
        if (shape_numel(new_shape) != numel())
            throw std::invalid_argument("reshape: element count mismatch");
        Tensor t = *this;
        t.shape_ = std::move(new_shape);
        return t;
    }

    Tensor clone() const {
        Tensor t;
        t.shape_ = shape_;
        t.buf_ = std::make_shared<std::vector<double>>(*buf_);
        t.requires_grad = requires_grad;
        return t;
    }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    bool requires_grad = false;

private:
    void validate() const {
        if (shape_.empty()) throw std::invalid_argument("Tensor: empty shape");
        for (int64_t e : shape_)
            if (e < 1) throw std::invalid_argument("Tensor: extent < 1 in " + shape_str(shape_));
    }

    Shape shape_;
    std::shared_ptr<std::vector<double>> buf_;
};

// Small helpers shared across modules.

inline void check_same_shape(const Tensor& a, const Tensor& b, const char* where) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(where) + ": shape mismatch " +
                                    shape_str(a.shape()) + " vs " + shape_str(b.shape()));
}

inline double l2_norm(const Tensor& t) {
    double s = 0.0;
    const double* p = t.data();
    for (int64_t i = 0; i < t.numel(); ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

inline double l2_dist(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "l2_dist");
    double s = 0.0;
    const double *pa = a.data(), *pb = b.data();
    for (int64_t i = 0; i < a.numel(); ++i) {
        double d = pa[i] - pb[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    const double *pa = a.data(), *pb = b.data();
    for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
    return m;
}

inline double max_abs(const Tensor& a) {
    double m = 0.0;
    const double* p = a.data();
    for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

}  // namespace convfno
