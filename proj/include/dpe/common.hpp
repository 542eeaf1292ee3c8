#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpe {

enum class errc {
    syntax_error,
    undeclared_variable,
    runtime_error,
    budget_exceeded,
    input_mismatch,
    shape_mismatch,
    empty_corpus,
    empty_sequence,
    empty_trace,
    empty_dataset,
    label_out_of_range,
    all_masked,
    diverged_loss,
    vocab_mismatch,
    unknown_task,
    not_applicable,
    insufficient_diversity,
    conflicting_anchors,
    invalid_anchor,
    io_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::syntax_error: return "SyntaxError";
    case errc::undeclared_variable: return "UndeclaredVariable";
    case errc::runtime_error: return "RuntimeError";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::input_mismatch: return "InputMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::empty_corpus: return "EmptyCorpus";
    case errc::empty_sequence: return "EmptySequence";
    case errc::empty_trace: return "EmptyTrace";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::label_out_of_range: return "LabelOutOfRange";
    case errc::all_masked: return "AllMasked";
    case errc::diverged_loss: return "DivergedLoss";
    case errc::vocab_mismatch: return "VocabMismatch";
    case errc::unknown_task: return "UnknownTask";
    case errc::not_applicable: return "NotApplicable";
    case errc::insufficient_diversity: return "InsufficientDiversity";
    case errc::conflicting_anchors: return "ConflictingAnchors";
    case errc::invalid_anchor: return "InvalidAnchor";
    case errc::io_error: return "IoError";
    case errc::internal: return "InternalError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(errc code, std::string msg, int line = -1, int column = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
          code_(code), line_(line), column_(column) {}

    errc code() const { return code_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    errc code_;
    int line_;
    int column_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg, int line = -1, int col = -1) {
    throw Error(code, msg, line, col);
}

// Deterministic 64-bit PRNG (splitmix64). std::mt19937_64 has a portable
// sequence, but the standard distributions do not, so all randomness in the
// project goes through this generator and the helpers below.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Derive an independent stream for a sub-task.
    Rng fork(std::uint64_t stream) {
        Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        r.next_u64();
        return r;
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates with our own generator; std::shuffle's draw order is
// implementation-defined.
template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

// FNV-1a, used for content hashes referenced by manifests and checkpoints.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a(s.data(), s.size(), h);
}

inline std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace dpe
