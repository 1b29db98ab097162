#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padyn {

struct Witness {
    std::string label;
    std::string detail;
};

// One named verification step.  Witnesses carry the concrete data (sample
// points, valuations, mismatched values) that justify the verdict.
struct Check {
    std::string name;
    bool pass = true;
    std::string note;
    std::vector<Witness> witnesses;

    Check& fail(std::string label, std::string detail) {
        pass = false;
        witnesses.push_back({std::move(label), std::move(detail)});
        return *this;
    }
    Check& witness(std::string label, std::string detail) {
        witnesses.push_back({std::move(label), std::move(detail)});
        return *this;
    }
};

struct VerificationReport {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    Check& add(std::string name) {
        Check c;
        c.name = std::move(name);
        checks.push_back(std::move(c));
        return checks.back();
    }
    void append(const VerificationReport& other, const std::string& prefix = "") {
        for (const Check& c : other.checks) {
            checks.push_back(c);
            if (!prefix.empty()) checks.back().name = prefix + c.name;
        }
        for (const std::string& n : other.notes) notes.push_back(n);
    }
    bool pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* find(const std::string& name) const {
        for (const Check& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Thrown by sampling-based geometry when a witness disproves a hypothesis
// (pole hit, ratio disagreement, image escaping the target).  Verification
// drivers catch it and convert it into a failing check.
class MapImageError : public std::runtime_error {
public:
    explicit MapImageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace padyn
