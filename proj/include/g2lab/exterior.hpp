#pragma once

#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "g2lab/errors.hpp"

namespace g2lab {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Sign of the permutation taking 0..m-1 to p (inversion count parity).
int permutation_sign(const std::vector<int>& p);

/**
 * @brief Dense alternating k-tensor on an n-dimensional fiber.
 *
 * Components are stored for every index tuple (n^k entries). A form is
 * (1/k!) a_{i1..ik} dx^{i1} ^ ... ^ dx^{ik}, so comps are the a_I with all
 * permutations populated. Indices are 0-based.
 */
class AltTensor {
public:
    AltTensor() = default;
    AltTensor(int n, int k);

    // Antisymmetrizes the supplied dense array.
    static AltTensor from_dense(int n, int k, std::vector<double> comps);
    static AltTensor scalar(int n, double value);
    // Elementary form e^{i1..ik}; indices need not be sorted.
    static AltTensor elementary(int n, std::initializer_list<int> idx);
    static AltTensor from_covector(const VecX& w);

    int dim() const { return n_; }
    int degree() const { return k_; }
    std::size_t size() const { return comps_.size(); }

    double operator()(std::initializer_list<int> idx) const;
    double at(const int* idx) const { return comps_[offset(idx)]; }
    double& raw(std::size_t i) { return comps_[i]; }
    double raw(std::size_t i) const { return comps_[i]; }
    const std::vector<double>& comps() const { return comps_; }

    // Writes value on idx and the signed value on all its permutations.
    void set_alt(const int* idx, double value);
    void set_alt(std::initializer_list<int> idx, double value);

    std::size_t offset(const int* idx) const;

    AltTensor& operator+=(const AltTensor& o);
    AltTensor& operator-=(const AltTensor& o);
    AltTensor& operator*=(double s);

    double max_abs() const;
    void antisymmetrize();

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<double> comps_;
};

AltTensor operator+(AltTensor a, const AltTensor& b);
AltTensor operator-(AltTensor a, const AltTensor& b);
AltTensor operator*(double s, AltTensor a);
AltTensor operator*(AltTensor a, double s);

double max_abs_diff(const AltTensor& a, const AltTensor& b);

// All increasing k-subsets of 0..n-1.
std::vector<std::vector<int>> combinations(int n, int k);

/**
 * @brief Riemannian metric with cached inverse and volume density.
 */
class Metric {
public:
    Metric() = default;
    explicit Metric(const MatX& g);
    static Metric identity(int n);

    int dim() const { return static_cast<int>(g_.rows()); }
    const MatX& g() const { return g_; }
    const MatX& inv() const { return inv_; }
    double sqrt_det() const { return sqrt_det_; }

private:
    MatX g_, inv_;
    double sqrt_det_ = 1.0;
};

AltTensor wedge(const AltTensor& a, const AltTensor& b);
// Coefficient of e^{0..n-1} in a ^ b, without building the n-form.
double wedge_top(const AltTensor& a, const AltTensor& b);
AltTensor interior(const VecX& x, const AltTensor& a);

// Raises every index with the inverse metric.
AltTensor raise_all(const AltTensor& a, const Metric& g);
// Pulls back by a linear map: (P*a)(v1..vk) = a(P v1, .., P vk).
AltTensor pullback(const MatX& p, const AltTensor& a);

double form_inner(const AltTensor& a, const AltTensor& b, const Metric& g);
double form_norm2(const AltTensor& a, const Metric& g);
AltTensor hodge(const AltTensor& a, const Metric& g, int orientation = 1);
AltTensor volume_form(const Metric& g, int orientation = 1);

VecX flat(const VecX& x, const Metric& g);
VecX sharp(const VecX& w, const Metric& g);

// max-abs of star(X -| w) - (-1)^(k+1) (X_flat ^ star w)
double interior_hodge_residual(const VecX& x, const AltTensor& a, const Metric& g);

}  // namespace g2lab
