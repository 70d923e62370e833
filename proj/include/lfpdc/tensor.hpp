#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace lfpdc
{

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

// Dense 3x3x3 complex array, indexed (a, b, c).
class Tensor3
{
public:
    Tensor3() { data_.fill(cplx(0.0, 0.0)); }

    cplx& operator()(int a, int b, int c) { return data_[idx(a, b, c)]; }
    const cplx& operator()(int a, int b, int c) const { return data_[idx(a, b, c)]; }

    double frobenius() const
    {
        double s = 0.0;
        for (const auto& v : data_)
            s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

    Tensor3& operator*=(cplx s)
    {
        for (auto& v : data_)
            v *= s;
        return *this;
    }

    friend Tensor3 operator*(cplx s, Tensor3 t) { return t *= s; }

    friend Tensor3 operator-(const Tensor3& a, const Tensor3& b)
    {
        Tensor3 r;
        for (std::size_t n = 0; n < 27; ++n)
            r.data_[n] = a.data_[n] - b.data_[n];
        return r;
    }

    friend Tensor3 operator+(const Tensor3& a, const Tensor3& b)
    {
        Tensor3 r;
        for (std::size_t n = 0; n < 27; ++n)
            r.data_[n] = a.data_[n] + b.data_[n];
        return r;
    }

    const std::array<cplx, 27>& flat() const { return data_; }

private:
    static constexpr std::size_t idx(int a, int b, int c) { return std::size_t(9 * a + 3 * b + c); }
    std::array<cplx, 27> data_;
};

// ||a - b||_F / ||b||_F, or the absolute gap when b vanishes.
inline double relative_frobenius(const Tensor3& a, const Tensor3& b)
{
    double nb = b.frobenius();
    double d = (a - b).frobenius();
    return nb > 0.0 ? d / nb : d;
}

}  // namespace lfpdc
