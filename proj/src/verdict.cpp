#include "mra/verdict.hpp"

namespace mra {

std::string Verdict::state_name() const
{
    switch (state) {
    case State::Certified:
        return "Certified";
    case State::Refuted:
        return "Refuted";
    case State::UnknownBeyond:
        return "UnknownBeyond";
    }
    return "?";
}

std::string Verdict::str() const
{
    std::string s = state_name();
    if (state == State::Certified)
        s += infinite ? "(inf)" : "(" + std::to_string(value) + ")";
    else if (state == State::Refuted)
        s += "(" + std::to_string(value) + ")";
    else
        s += "(" + std::to_string(bound) + ")";
    if (!reason.empty())
        s += ": " + reason;
    return s;
}

Verdict conjunction(const Verdict& a, const Verdict& b)
{
    if (a.is_refuted())
        return a;
    if (b.is_refuted())
        return b;
    if (a.is_unknown())
        return a;
    if (b.is_unknown())
        return b;
    Verdict v = Verdict::yes(a.reason.empty() ? b.reason : (b.reason.empty() ? a.reason : a.reason + "; " + b.reason));
    return v;
}

}  // namespace mra
