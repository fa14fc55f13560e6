#include "lgequiv/report.hpp"

namespace lgequiv {

bool VerificationReport::ok() const {
    if (items.empty()) return true;
    for (const auto& i : items) {
        if (!i.pass) return false;
    }
    return true;
}

void VerificationReport::add(std::string name, bool pass, std::string detail) {
    items.push_back({std::move(name), pass, std::move(detail)});
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
    for (const auto& i : other.items) items.push_back({prefix + i.name, i.pass, i.detail});
}

std::vector<IdentityResult> VerificationReport::failures() const {
    std::vector<IdentityResult> f;
    for (const auto& i : items) {
        if (!i.pass) f.push_back(i);
    }
    return f;
}

std::string VerificationReport::summary() const {
    std::string s;
    for (const auto& i : items) {
        s += (i.pass ? "  [pass] " : "  [FAIL] ") + i.name;
        if (!i.pass && !i.detail.empty()) s += "\n         " + i.detail;
        s += "\n";
    }
    return s;
}

std::string describe(const RationalFn& f, std::size_t max_chars) {
    std::string s;
    if (auto q = f.as_laurent()) {
        s = to_canonical(*q);
    } else {
        s = "(" + to_canonical(f.num()) + ") / (" + to_canonical(f.den()) + ")";
    }
    if (s.size() > max_chars) s = s.substr(0, max_chars) + "...";
    return s;
}

void check_identity(VerificationReport& r, const std::string& name, const RationalFn& lhs, const RationalFn& rhs) {
    const bool pass = rf_eq(lhs, rhs);
    std::string detail;
    if (!pass) detail = "lhs = " + describe(lhs) + " ; rhs = " + describe(rhs);
    r.add(name, pass, std::move(detail));
}

}  // namespace lgequiv
