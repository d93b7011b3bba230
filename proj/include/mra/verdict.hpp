#pragma once

#include <string>

namespace mra {

// Three-valued outcome for questions that may only be semi-decidable.
// Boolean questions use Certified for "yes" and Refuted for "no";
// numeric questions carry the value (or the witness degree when refuted).
struct Verdict {
    enum class State { Certified, Refuted, UnknownBeyond };

    State state = State::UnknownBeyond;
    long value = 0;
    bool infinite = false;
    int bound = 0;
    std::string reason;

    static Verdict yes(std::string why = {}) { return {State::Certified, 1, false, 0, std::move(why)}; }
    static Verdict no(std::string why = {}) { return {State::Refuted, 0, false, 0, std::move(why)}; }
    static Verdict certified(long v, std::string why = {}) { return {State::Certified, v, false, 0, std::move(why)}; }
    static Verdict certified_infinite(std::string why = {}) { return {State::Certified, 0, true, 0, std::move(why)}; }
    static Verdict refuted_at(long deg, std::string why = {}) { return {State::Refuted, deg, false, 0, std::move(why)}; }
    static Verdict unknown(int cap, std::string why = {}) { return {State::UnknownBeyond, 0, false, cap, std::move(why)}; }

    bool is_certified() const { return state == State::Certified; }
    bool is_refuted() const { return state == State::Refuted; }
    bool is_unknown() const { return state == State::UnknownBeyond; }

    std::string state_name() const;
    std::string str() const;
};

// Three-valued conjunction: any Refuted wins, then any UnknownBeyond.
Verdict conjunction(const Verdict& a, const Verdict& b);

}  // namespace mra
