#ifndef RADICAL_SEQ_HPP
#define RADICAL_SEQ_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace rad {

enum class SeqKind { Finite, EventuallyPeriodic, Stream };

// A finitely-described sequence of signs a_k in {-1,+1}: either a finite
// list, an eventually periodic description (prefix + repeated block), or a
// caller-supplied stream with a declared index bound. Immutable once built.
class SignSequence {
public:
    using Supplier = std::function<int(std::uint64_t)>;

    static SignSequence finite(std::vector<int> signs);
    static SignSequence eventually_periodic(std::vector<int> prefix,
                                            std::vector<int> period);
    static SignSequence purely_periodic(std::vector<int> period) {
        return eventually_periodic({}, std::move(period));
    }
    // `index_bound` is the number of readable terms: indices 0..index_bound-1.
    // Reads past it throw, so downstream error bounds stay honest.
    static SignSequence stream(Supplier supplier, std::uint64_t index_bound);

    SeqKind kind() const { return kind_; }
    bool is_infinite() const { return kind_ != SeqKind::Finite; }
    bool is_purely_periodic() const {
        return kind_ == SeqKind::EventuallyPeriodic && prefix_.empty();
    }

    // a_m. Throws domain_error past a Finite length or a Stream bound.
    int term(std::uint64_t m) const;

    // Number of indexable terms: Finite length or Stream bound.
    std::uint64_t length_limit() const;

    const std::vector<int>& finite_signs() const { return prefix_; }
    const std::vector<int>& prefix() const { return prefix_; }
    const std::vector<int>& period() const { return period_; }

    // Shortest-description form: minimal period, no unrolled period copy
    // left at the end of the prefix. Identity for Finite and Stream kinds.
    SignSequence canonical() const;

    // Description equality after canonicalization.
    bool same_description(const SignSequence& other) const;

private:
    SignSequence(SeqKind kind, std::vector<int> prefix, std::vector<int> period,
                 std::shared_ptr<const Supplier> supplier, std::uint64_t bound)
        : kind_(kind), prefix_(std::move(prefix)), period_(std::move(period)),
          supplier_(std::move(supplier)), stream_bound_(bound) {}

    SeqKind kind_;
    std::vector<int> prefix_;  // Finite kind stores its signs here
    std::vector<int> period_;
    std::shared_ptr<const Supplier> supplier_;
    std::uint64_t stream_bound_ = 0;
};

// Sequence-format grammar:
//   SEQ   := SIGNS | SIGNS? '(' SIGNS ')'
//   SIGNS := ('+' | '-')+
// No whitespace. Throws parse_error with a byte offset on malformed input.
SignSequence parse_sequence(std::string_view text);

// Canonical closed-form text. Streams have no closed form and throw;
// use print_truncated for them.
std::string print_sequence(const SignSequence& s);

// First `length` signs as finite-sequence text (the result reads back as a
// Finite sequence).
std::string print_truncated(const SignSequence& s, std::uint64_t length);

} // namespace rad

#endif
