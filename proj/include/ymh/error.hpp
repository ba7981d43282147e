#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ymh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeError : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

struct PlaquetteRef {
    int component;
    std::size_t site;
};

// Raised by vorticity() when u vanishes on a corner of some plaquette.
class ZeroOnPlaquette : public Error {
public:
    explicit ZeroOnPlaquette(std::vector<PlaquetteRef> flagged)
        : Error("section vanishes on " + std::to_string(flagged.size()) + " plaquette(s)"),
          flagged_(std::move(flagged)) {}

    const std::vector<PlaquetteRef>& flagged() const { return flagged_; }

private:
    std::vector<PlaquetteRef> flagged_;
};

class NonCompatibleSource : public Error {
public:
    using Error::Error;
};

class SolverNotConverged : public Error {
public:
    SolverNotConverged(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class WindingMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace ymh
