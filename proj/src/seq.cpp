#include "seq.hpp"

#include <algorithm>

namespace rad {

namespace {

void check_signs(const std::vector<int>& v, const char* what) {
    for (int s : v)
        if (s != 1 && s != -1)
            throw domain_error(std::string(what) + " entries must be +1 or -1");
}

// Length of the shortest block whose repetition gives `v`.
std::size_t minimal_period(const std::vector<int>& v) {
    const std::size_t n = v.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i)
            ok = v[i] == v[i - d];
        if (ok) return d;
    }
    return n;
}

} // namespace

SignSequence SignSequence::finite(std::vector<int> signs) {
    if (signs.empty())
        throw domain_error("a finite sequence needs at least one sign");
    check_signs(signs, "sign");
    return SignSequence(SeqKind::Finite, std::move(signs), {}, nullptr, 0);
}

SignSequence SignSequence::eventually_periodic(std::vector<int> prefix,
                                               std::vector<int> period) {
    if (period.empty())
        throw domain_error("period block must be nonempty");
    check_signs(prefix, "prefix");
    check_signs(period, "period");
    return SignSequence(SeqKind::EventuallyPeriodic, std::move(prefix),
                        std::move(period), nullptr, 0);
}

SignSequence SignSequence::stream(Supplier supplier, std::uint64_t index_bound) {
    if (!supplier) throw domain_error("stream supplier must be callable");
    if (index_bound == 0)
        throw domain_error("stream index bound must be at least 1");
    return SignSequence(SeqKind::Stream, {}, {},
                        std::make_shared<const Supplier>(std::move(supplier)),
                        index_bound);
}

int SignSequence::term(std::uint64_t m) const {
    switch (kind_) {
    case SeqKind::Finite:
        if (m >= prefix_.size())
            throw domain_error("index " + std::to_string(m) +
                               " out of range for finite sequence of length " +
                               std::to_string(prefix_.size()));
        return prefix_[m];
    case SeqKind::EventuallyPeriodic:
        if (m < prefix_.size()) return prefix_[m];
        return period_[(m - prefix_.size()) % period_.size()];
    case SeqKind::Stream: {
        if (m >= stream_bound_)
            throw domain_error("index " + std::to_string(m) +
                               " past declared stream bound " +
                               std::to_string(stream_bound_));
        int s = (*supplier_)(m);
        if (s != 1 && s != -1)
            throw domain_error("stream supplier returned a non-sign value");
        return s;
    }
    }
    throw internal_error("unreachable sequence kind");
}

std::uint64_t SignSequence::length_limit() const {
    switch (kind_) {
    case SeqKind::Finite: return prefix_.size();
    case SeqKind::Stream: return stream_bound_;
    case SeqKind::EventuallyPeriodic: return UINT64_MAX;
    }
    throw internal_error("unreachable sequence kind");
}

SignSequence SignSequence::canonical() const {
    if (kind_ != SeqKind::EventuallyPeriodic) return *this;

    std::vector<int> pre = prefix_;
    std::vector<int> per(period_.begin(),
                         period_.begin() + minimal_period(period_));

    // A prefix ending with the period's last element is an unrolled copy of
    // the (rotated) period; absorb it until description is shortest.
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    }
    return eventually_periodic(std::move(pre), std::move(per));
}

bool SignSequence::same_description(const SignSequence& other) const {
    if (kind_ == SeqKind::Stream || other.kind_ == SeqKind::Stream)
        return false;
    SignSequence a = canonical();
    SignSequence b = other.canonical();
    return a.kind_ == b.kind_ && a.prefix_ == b.prefix_ && a.period_ == b.period_;
}

SignSequence parse_sequence(std::string_view text) {
    std::vector<int> head;
    std::size_t i = 0;

    auto read_signs = [&](std::vector<int>& out) {
        while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            out.push_back(text[i] == '+' ? 1 : -1);
            ++i;
        }
    };

    if (text.empty()) throw parse_error("empty sequence", 0);

    read_signs(head);
    if (i == text.size()) {
        if (head.empty()) throw parse_error("empty sequence", 0);
        return SignSequence::finite(std::move(head));
    }

    if (text[i] != '(')
        throw parse_error("expected '+', '-' or '(' in sequence", i);
    ++i;

    std::vector<int> period;
    read_signs(period);
    if (period.empty())
        throw parse_error("empty period block", i);
    if (i == text.size() || text[i] != ')')
        throw parse_error("expected ')' to close period block", i);
    ++i;
    if (i != text.size())
        throw parse_error("trailing characters after sequence", i);

    return SignSequence::eventually_periodic(std::move(head), std::move(period));
}

namespace {

void append_signs(std::string& out, const std::vector<int>& v) {
    for (int s : v) out.push_back(s > 0 ? '+' : '-');
}

} // namespace

std::string print_sequence(const SignSequence& s) {
    switch (s.kind()) {
    case SeqKind::Finite: {
        std::string out;
        append_signs(out, s.finite_signs());
        return out;
    }
    case SeqKind::EventuallyPeriodic: {
        SignSequence c = s.canonical();
        std::string out;
        append_signs(out, c.prefix());
        out.push_back('(');
        append_signs(out, c.period());
        out.push_back(')');
        return out;
    }
    case SeqKind::Stream:
        throw domain_error("a stream has no closed form; print a truncation "
                           "with an explicit length instead");
    }
    throw internal_error("unreachable sequence kind");
}

std::string print_truncated(const SignSequence& s, std::uint64_t length) {
    if (length == 0)
        throw domain_error("truncation length must be at least 1");
    std::string out;
    out.reserve(length);
    for (std::uint64_t m = 0; m < length; ++m)
        out.push_back(s.term(m) > 0 ? '+' : '-');
    return out;
}

} // namespace rad
