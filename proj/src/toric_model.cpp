#include "lgequiv/toric_model.hpp"

#include <numeric>
#include <sstream>

namespace lgequiv {

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v;
    }
    return s;
}

std::string to_string(const IndexSet& s) {
    std::string out = "{";
    bool first = true;
    for (int i : s) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(i);
    }
    return out + "}";
}

std::string DivisorClass::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ',';
        os << coords[i];
        if (moduli[i] != 0) os << " mod " << moduli[i];
    }
    os << ')';
    return os.str();
}

ToricModel::ToricModel(std::size_t dim, std::vector<ExpVec> rays) : dim_(dim), rays_(std::move(rays)) {
    for (std::size_t j = 0; j < rays_.size(); ++j) {
        if (rays_[j].size() != dim_) {
            throw DimensionError("ray " + std::to_string(j + 1) + " has length " +
                                 std::to_string(rays_[j].size()) + ", expected " + std::to_string(dim_));
        }
    }
    ray_matrix_ = IntMatrix::from_rows(rays_);
    if (rays_.empty()) ray_matrix_ = IntMatrix(0, dim_);
}

const ExpVec& ToricModel::ray(int j) const {
    if (j < 1 || static_cast<std::size_t>(j) > rays_.size()) {
        throw std::out_of_range("ray index " + std::to_string(j) + " not in 1.." + std::to_string(rays_.size()));
    }
    return rays_[static_cast<std::size_t>(j - 1)];
}

ValidationReport validate_model(const ToricModel& m) {
    ValidationReport r;
    if (m.dim() == 0) r.add("lattice rank must be positive");
    for (std::size_t j = 0; j < m.num_rays(); ++j) {
        std::int64_t g = 0;
        for (auto x : m.rays()[j]) g = std::gcd(g, x);
        if (g != 1) {
            r.add("ray " + std::to_string(j + 1) + " " + to_string(m.rays()[j]) + " is not primitive (gcd " +
                  std::to_string(g) + ")");
        }
        for (std::size_t k = 0; k < j; ++k) {
            if (m.rays()[k] == m.rays()[j]) {
                r.add("rays " + std::to_string(k + 1) + " and " + std::to_string(j + 1) + " coincide");
            }
        }
    }
    if (m.num_rays() <= m.dim()) {
        r.add("need more rays than the rank (" + std::to_string(m.num_rays()) + " <= " + std::to_string(m.dim()) + ")");
    }
    if (m.num_rays() > 0) {
        const auto rank = smith_normal_form(m.ray_matrix()).rank;
        if (rank < m.dim()) {
            r.add("rays span a rank " + std::to_string(rank) + " sublattice, expected " + std::to_string(m.dim()));
        }
    }
    return r;
}

ValidationReport validate_partition(const ToricModel& m, const NefPartition& p) {
    ValidationReport r;
    if (p.parts.empty()) {
        r.add("partition has no parts");
        return r;
    }
    std::vector<int> seen(m.num_rays() + 1, 0);
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        for (int j : p.parts[i]) {
            if (j < 1 || static_cast<std::size_t>(j) > m.num_rays()) {
                r.add("part " + std::to_string(i + 1) + " has index " + std::to_string(j) + " out of range 1.." +
                      std::to_string(m.num_rays()));
                continue;
            }
            if (seen[static_cast<std::size_t>(j)]++) r.add("index " + std::to_string(j) + " appears in more than one part");
        }
    }
    for (std::size_t j = 1; j <= m.num_rays(); ++j) {
        if (!seen[j]) r.add("not a partition: index " + std::to_string(j) + " is missing");
    }
    return r;
}

namespace {

std::vector<Integer> indicator(const ToricModel& m, const IndexSet& s) {
    std::vector<Integer> e(m.num_rays());
    for (int j : s) {
        if (j < 1 || static_cast<std::size_t>(j) > m.num_rays()) {
            throw std::out_of_range("index " + std::to_string(j) + " not in 1.." + std::to_string(m.num_rays()));
        }
        e[static_cast<std::size_t>(j - 1)] += 1;
    }
    return e;
}

}  // namespace

DivisorClass class_of(const ToricModel& m, const IndexSet& s) {
    const auto b = indicator(m, s);
    const SnfDecomposition snf = smith_normal_form(m.ray_matrix());
    DivisorClass cls;
    for (std::size_t i = 0; i < m.num_rays(); ++i) {
        Integer y = 0;
        for (std::size_t k = 0; k < m.num_rays(); ++k) y += snf.U(i, k) * b[k];
        if (i < snf.rank) {
            const Integer& d = snf.D(i, i);
            if (d == 1) continue;  // trivial coordinate
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t());
            cls.coords.push_back(r);
            cls.moduli.push_back(d);
        } else {
            cls.coords.push_back(y);
            cls.moduli.emplace_back(0);
        }
    }
    return cls;
}

ValidationReport validate_pair(const ToricModel& m, const NefPartition& p, const NefPartition& q) {
    ValidationReport r;
    for (const auto& v : validate_partition(m, p).violations) r.add("first partition: " + v);
    for (const auto& v : validate_partition(m, q).violations) r.add("second partition: " + v);
    if (!r.ok()) return r;
    if (p.parts.size() != q.parts.size()) {
        r.add("length mismatch: " + std::to_string(p.parts.size()) + " vs " + std::to_string(q.parts.size()) + " parts");
        return r;
    }
    for (std::size_t i = 0; i + 1 < p.parts.size(); ++i) {
        const auto a = class_of(m, p.parts[i]);
        const auto b = class_of(m, q.parts[i]);
        if (!(a == b)) {
            r.add("class mismatch at i=" + std::to_string(i + 1) + ": " + to_string(p.parts[i]) + " has class " +
                  a.str() + ", " + to_string(q.parts[i]) + " has class " + b.str());
        }
    }
    return r;
}

LaurentPoly superpotential(const ToricModel& m) {
    LaurentPoly w(m.dim());
    for (const auto& v : m.rays()) w.add_term(v, 1);
    return w;
}

LaurentPoly partition_sum(const ToricModel& m, const IndexSet& s) {
    LaurentPoly g(m.dim());
    for (int j : s) g.add_term(m.ray(j), 1);
    return g;
}

ExpVec weight_vector(const ToricModel& m, const IndexSet& s, const IndexSet& s_prime) {
    ExpVec pattern(m.num_rays(), 0);
    for (int j : s) {
        (void)m.ray(j);
        if (!s_prime.contains(j)) pattern[static_cast<std::size_t>(j - 1)] = 1;
    }
    for (int j : s_prime) {
        (void)m.ray(j);
        if (!s.contains(j)) pattern[static_cast<std::size_t>(j - 1)] = -1;
    }
    auto w = solve_integer(m.ray_matrix(), pattern);
    if (!w) {
        throw std::invalid_argument("no weight vector for " + to_string(s) + " vs " + to_string(s_prime) +
                                    ": the divisor classes differ");
    }
    return *w;
}

}  // namespace lgequiv
