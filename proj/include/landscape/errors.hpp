#pragma once

#include <stdexcept>
#include <string>

namespace landscape {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroPolynomial : public Error { public: using Error::Error; };
class NonConvergence : public Error { public: using Error::Error; };
class PoleProximity : public Error { public: using Error::Error; };
class DegreeOverflow : public Error { public: using Error::Error; };
class AnnulusDegenerate : public Error { public: using Error::Error; };
class BadParameters : public Error { public: using Error::Error; };
class SearchExhausted : public Error { public: using Error::Error; };
class CapViolation : public Error { public: using Error::Error; };
class UnresolvedTopology : public Error { public: using Error::Error; };
class ResolutionTooCoarse : public Error { public: using Error::Error; };
class BranchAmbiguity : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// Config-file syntax error; carries 1-based line/column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }
private:
    int line_, col_;
};

// Config is syntactically fine but a key/value violates the schema.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& key, const std::string& why)
        : Error("invalid config key '" + key + "': " + why), key_(key) {}
    const std::string& key() const { return key_; }
private:
    std::string key_;
};

} // namespace landscape
