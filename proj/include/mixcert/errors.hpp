#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mixcert {

// Base of every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (bad parameter, malformed input).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidArgument {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class NonRegular : public InvalidArgument {
public:
    NonRegular(std::uint32_t vertex, std::size_t degree, std::size_t expected)
        : InvalidArgument("vertex " + std::to_string(vertex) + " has degree " +
                          std::to_string(degree) + ", expected " + std::to_string(expected)),
          vertex_(vertex), degree_(degree) {}
    std::uint32_t vertex() const { return vertex_; }
    std::size_t degree() const { return degree_; }

private:
    std::uint32_t vertex_;
    std::size_t degree_;
};

class SelfLoop : public InvalidArgument {
public:
    explicit SelfLoop(std::uint32_t vertex)
        : InvalidArgument("self-loop at vertex " + std::to_string(vertex)), vertex_(vertex) {}
    std::uint32_t vertex() const { return vertex_; }

private:
    std::uint32_t vertex_;
};

class DuplicateEdge : public InvalidArgument {
public:
    DuplicateEdge(std::uint32_t u, std::uint32_t v)
        : InvalidArgument("duplicate edge " + std::to_string(u) + " " + std::to_string(v)),
          u_(u), v_(v) {}
    std::uint32_t u() const { return u_; }
    std::uint32_t v() const { return v_; }

private:
    std::uint32_t u_, v_;
};

class EmptySet : public InvalidArgument {
public:
    EmptySet() : InvalidArgument("set pair contains an empty set") {}
};

class SizeOutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// A pair handed to a witness-only operation does not reach the requested surplus.
class NotAWitness : public InvalidArgument {
public:
    NotAWitness(double surplus, double alpha)
        : InvalidArgument("pair surplus " + std::to_string(surplus) + " is below alpha " +
                          std::to_string(alpha)),
          surplus_(surplus), alpha_(alpha) {}
    double surplus() const { return surplus_; }
    double alpha() const { return alpha_; }

private:
    double surplus_, alpha_;
};

// Operation refused because the instance is above a configured enumeration cap.
class SizeCap : public Error {
public:
    SizeCap(std::size_t n, std::size_t cap)
        : Error("n = " + std::to_string(n) + " exceeds the configured cap " + std::to_string(cap)),
          n_(n), cap_(cap) {}
    std::size_t n() const { return n_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t n_, cap_;
};

class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(std::size_t iterations, double residual)
        : Error("eigensolver did not converge after " + std::to_string(iterations) +
                " iterations (residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}
    std::size_t iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

class GenerationFailure : public Error {
public:
    explicit GenerationFailure(std::size_t retries)
        : Error("generator gave up after " + std::to_string(retries) + " retries"),
          retries_(retries) {}
    std::size_t retries() const { return retries_; }

private:
    std::size_t retries_;
};

class BudgetZero : public InvalidArgument {
public:
    BudgetZero() : InvalidArgument("step budget must be positive") {}
};

class IndexOutOfTrace : public InvalidArgument {
public:
    IndexOutOfTrace(std::size_t index, std::size_t last)
        : InvalidArgument("step " + std::to_string(index) + " is beyond the trace (last step " +
                          std::to_string(last) + ")") {}
};

class NotReached : public Error {
public:
    NotReached(std::size_t budget, double last_d_tv)
        : Error("mixing threshold not reached within " + std::to_string(budget) +
                " steps (last d_tv " + std::to_string(last_d_tv) + ")"),
          budget_(budget), last_d_tv_(last_d_tv) {}
    std::size_t budget() const { return budget_; }
    double last_d_tv() const { return last_d_tv_; }

private:
    std::size_t budget_;
    double last_d_tv_;
};

} // namespace mixcert
