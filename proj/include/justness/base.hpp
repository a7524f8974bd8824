#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace justness {

/// Interned identifier. Equality and hashing use the intern index;
/// ordering is lexicographic on the text so printed sets are stable.
class Symbol {
public:
    Symbol() = default;
    static Symbol intern(std::string_view text);

    const std::string& str() const;
    std::uint32_t id() const { return id_; }
    bool empty() const { return id_ == 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator<(Symbol a, Symbol b) { return a.id_ != b.id_ && a.str() < b.str(); }

private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

inline std::size_t hash_mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// ---- errors -------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class DialectError : public Error { public: using Error::Error; };
class UndefinedAgent : public Error { public: using Error::Error; };

class GuardednessError : public Error {
public:
    GuardednessError(Symbol ident, std::string path)
        : Error("unguarded occurrence of " + ident.str() + " at " + (path.empty() ? "top" : path)),
          ident_(ident), path_(std::move(path)) {}
    Symbol identifier() const { return ident_; }
    const std::string& path() const { return path_; }

private:
    Symbol ident_;
    std::string path_;
};

class BoundExceeded : public Error {
public:
    explicit BoundExceeded(std::size_t bound)
        : Error("state bound " + std::to_string(bound) + " exceeded"), bound_(bound) {}
    std::size_t bound() const { return bound_; }

private:
    std::size_t bound_;
};

class NotSBullet : public Error { public: using Error::Error; };
class TypeDiscipline : public Error { public: using Error::Error; };
class PreconditionViolated : public Error { public: using Error::Error; };
class AdjacencyError : public Error { public: using Error::Error; };
class IndicatorInPath : public Error { public: using Error::Error; };
class BadBlockingSet : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };

} // namespace justness

template <>
struct std::hash<justness::Symbol> {
    std::size_t operator()(justness::Symbol s) const noexcept { return s.id(); }
};
