#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ringbif {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NoBifurcation : public Error {
public:
    using Error::Error;
};

class DeterminacyFailure : public Error {
public:
    using Error::Error;
};

class NotFirstOrder : public Error {
public:
    using Error::Error;
};

class NormalizationAmbiguous : public Error {
public:
    using Error::Error;
};

class DiscretizationError : public Error {
public:
    using Error::Error;
};

class TrustRegionExceeded : public Error {
public:
    TrustRegionExceeded(const std::string& what, double alpha) : Error(what), alpha_(alpha) {}
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

class DegenerateKernel : public Error {
public:
    DegenerateKernel(const std::string& what, std::vector<double> eigenvalues)
        : Error(what), eigenvalues_(std::move(eigenvalues)) {}
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

private:
    std::vector<double> eigenvalues_;
};

class Diverged : public Error {
public:
    Diverged(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

}  // namespace ringbif
