#include "momentlab/roots.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace momentlab {

namespace {

bool entryLess(const RootEntry& a, const RootEntry& b) {
    if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
    return a.root.imag() < b.root.imag();
}

} // namespace

RootMultiset::RootMultiset(std::vector<RootEntry> entries, double leadingCoeff)
    : entries_(std::move(entries)), leadingCoeff_(leadingCoeff) {
    if (leadingCoeff_ == 0.0 || !std::isfinite(leadingCoeff_))
        throw DomainError("leading coefficient must be finite and nonzero");
    for (auto& e : entries_) {
        if (e.multiplicity < 1) throw DomainError("multiplicity must be positive");
        if (!std::isfinite(e.root.real()) || !std::isfinite(e.root.imag()))
            throw DomainError("non-finite root");
        if (std::fabs(e.root.imag()) <= 1e-8 * (1.0 + std::abs(e.root)))
            e.root = Complex(e.root.real(), 0.0);
    }
    // pairwise separation: callers must merge coincident roots
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = i + 1; j < entries_.size(); ++j)
            if (std::abs(entries_[i].root - entries_[j].root) <=
                1e-9 * (1.0 + std::abs(entries_[i].root)))
                throw DomainError("coincident roots; merge into one entry");
    // conjugate closure with exact symmetrization
    std::vector<bool> used(entries_.size(), false);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (used[i] || entries_[i].root.imag() == 0.0) continue;
        std::size_t match = entries_.size();
        double best = 1e-9 * (1.0 + std::abs(entries_[i].root));
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (j == i || used[j] || entries_[j].root.imag() == 0.0) continue;
            double d = std::abs(entries_[i].root - std::conj(entries_[j].root));
            if (d <= best) {
                best = d;
                match = j;
            }
        }
        if (match == entries_.size() || entries_[match].multiplicity != entries_[i].multiplicity)
            throw DomainError("non-real root without a matching conjugate");
        used[i] = used[match] = true;
        Complex avg = 0.5 * (entries_[i].root + std::conj(entries_[match].root));
        double y = std::fabs(avg.imag());
        entries_[i].root = Complex(avg.real(), entries_[i].root.imag() > 0 ? y : -y);
        entries_[match].root = Complex(avg.real(), entries_[match].root.imag() > 0 ? y : -y);
    }
    std::sort(entries_.begin(), entries_.end(), entryLess);
}

int RootMultiset::degree() const {
    int d = 0;
    for (const auto& e : entries_) d += e.multiplicity;
    return d;
}

std::vector<RootEntry> RootMultiset::realRoots() const {
    std::vector<RootEntry> out;
    for (const auto& e : entries_)
        if (e.root.imag() == 0.0) out.push_back(e);
    return out;
}

std::vector<ConjugatePair> RootMultiset::conjugatePairs() const {
    std::vector<ConjugatePair> out;
    for (const auto& e : entries_)
        if (e.root.imag() > 0.0) out.push_back({e.root.real(), e.root.imag(), e.multiplicity});
    return out;
}

bool RootMultiset::allReal() const {
    for (const auto& e : entries_)
        if (e.root.imag() != 0.0) return false;
    return true;
}

RealPolynomial RootMultiset::expand() const {
    std::vector<Complex> c{Complex(leadingCoeff_, 0.0)};
    for (const auto& e : entries_) {
        for (int k = 0; k < e.multiplicity; ++k) {
            std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i] -= c[i] * e.root;
                next[i + 1] += c[i];
            }
            c = std::move(next);
        }
    }
    std::vector<double> re(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) re[i] = c[i].real();
    return RealPolynomial(re);
}

long double RootMultiset::evalLong(long double n) const {
    long double acc = static_cast<long double>(leadingCoeff_);
    for (const auto& e : entries_) {
        if (e.root.imag() < 0.0) continue;  // pairs handled from the y > 0 side
        long double f;
        if (e.root.imag() == 0.0) {
            f = n - static_cast<long double>(e.root.real());
        } else {
            long double dx = n - static_cast<long double>(e.root.real());
            long double y = static_cast<long double>(e.root.imag());
            f = dx * dx + y * y;
        }
        for (int k = 0; k < e.multiplicity; ++k) acc *= f;
    }
    return acc;
}

bool is_stable(const RootMultiset& roots) {
    for (const auto& e : roots.entries())
        if (!(e.root.real() < 0.0)) return false;
    return true;
}

namespace {

Complex hornerC(const std::vector<double>& c, Complex z) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<double> deriv(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

// raw root estimates by simultaneous iteration on the monic polynomial
std::vector<Complex> aberth(const std::vector<double>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    std::vector<double> dc = deriv(monic);
    double maxc = 0.0;
    for (int i = 0; i < n; ++i) maxc = std::max(maxc, std::fabs(monic[i]));
    const double R = 1.0 + maxc;
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * (k + 0.35) / n + 0.13;
        z[k] = R * Complex(std::cos(ang), std::sin(ang));
    }
    for (int sweep = 0; sweep < 150; ++sweep) {
        bool converged = true;
        for (int k = 0; k < n; ++k) {
            Complex pv = hornerC(monic, z[k]);
            if (pv == Complex(0.0, 0.0)) continue;
            Complex dv = hornerC(dc, z[k]);
            if (std::abs(dv) < 1e-300) dv += 1e-300;
            Complex w = pv / dv;
            Complex S = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                Complex diff = z[k] - z[j];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
                S += 1.0 / diff;
            }
            Complex denom = 1.0 - w * S;
            Complex delta = (std::abs(denom) < 1e-300) ? w : w / denom;
            z[k] -= delta;
            if (std::abs(delta) > 1e-14 * (1.0 + std::abs(z[k]))) converged = false;
        }
        if (converged) break;
    }
    return z;
}

struct Candidate {
    std::vector<RootEntry> entries;
    double err = 1e300;
    bool valid = false;
};

// cluster raw roots at radius tau, polish, symmetrize, and score by
// round-trip expansion error against the monic input
Candidate clusterAt(const std::vector<Complex>& raw, const std::vector<double>& monic, double tau) {
    Candidate cand;
    const int n = static_cast<int>(raw.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double scale = 1.0 + 0.5 * (std::abs(raw[i]) + std::abs(raw[j]));
            if (std::abs(raw[i] - raw[j]) <= tau * scale) parent[find(i)] = find(j);
        }
    struct Cluster {
        Complex centroid;
        int mult;
    };
    std::vector<Cluster> clusters;
    for (int i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        Complex sum = 0.0;
        int cnt = 0;
        for (int j = 0; j < n; ++j)
            if (find(j) == i) {
                sum += raw[j];
                ++cnt;
            }
        clusters.push_back({sum / static_cast<double>(cnt), cnt});
    }
    // a split even-multiplicity real root shows up as a tight mirror pair;
    // snap near-real centroids so the re-clustering below can merge them
    for (auto& c : clusters)
        if (2.0 * std::fabs(c.centroid.imag()) <= tau * (1.0 + std::abs(c.centroid)))
            c.centroid = Complex(c.centroid.real(), 0.0);
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = i + 1; j < clusters.size();) {
            double scale = 1.0 + std::abs(clusters[i].centroid);
            if (std::abs(clusters[i].centroid - clusters[j].centroid) <= tau * scale) {
                int m = clusters[i].mult + clusters[j].mult;
                clusters[i].centroid =
                    (clusters[i].centroid * static_cast<double>(clusters[i].mult) +
                     clusters[j].centroid * static_cast<double>(clusters[j].mult)) /
                    static_cast<double>(m);
                clusters[i].mult = m;
                clusters.erase(clusters.begin() + j);
            } else {
                ++j;
            }
        }
    // polish each cluster: a multiplicity-m root is a simple root of p^{(m-1)}
    std::vector<std::vector<double>> derivs{monic};
    for (int k = 1; k < n; ++k) derivs.push_back(deriv(derivs.back()));
    for (auto& c : clusters) {
        const auto& pm = derivs[c.mult - 1];
        const auto pmd = deriv(pm);
        Complex zc = c.centroid;
        for (int it = 0; it < 40; ++it) {
            Complex f = hornerC(pm, zc);
            Complex fd = hornerC(pmd, zc);
            if (std::abs(fd) < 1e-300) break;
            Complex step = f / fd;
            zc -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(zc))) break;
        }
        if (std::abs(zc - c.centroid) <= 10.0 * tau * (1.0 + std::abs(c.centroid)) + 1e-10)
            c.centroid = zc;
    }
    // real snap and conjugate symmetrization
    for (auto& c : clusters)
        if (std::fabs(c.centroid.imag()) <= 1e-8 * (1.0 + std::abs(c.centroid)))
            c.centroid = Complex(c.centroid.real(), 0.0);
    std::vector<bool> used(clusters.size(), false);
    std::vector<RootEntry> entries;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (used[i]) continue;
        if (clusters[i].centroid.imag() == 0.0) {
            entries.push_back({clusters[i].centroid, clusters[i].mult});
            used[i] = true;
            continue;
        }
        std::size_t match = clusters.size();
        double best = 1e300;
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (j == i || used[j] || clusters[j].centroid.imag() == 0.0) continue;
            if (clusters[j].centroid.imag() * clusters[i].centroid.imag() > 0.0) continue;
            double d = std::abs(clusters[i].centroid - std::conj(clusters[j].centroid));
            if (d < best) {
                best = d;
                match = j;
            }
        }
        if (match == clusters.size() || clusters[match].mult != clusters[i].mult)
            return cand;  // conjugate symmetry broken at this radius
        Complex avg = 0.5 * (clusters[i].centroid + std::conj(clusters[match].centroid));
        double y = std::fabs(avg.imag());
        if (y <= 1e-8 * (1.0 + std::abs(avg))) return cand;
        entries.push_back({Complex(avg.real(), y), clusters[i].mult});
        entries.push_back({Complex(avg.real(), -y), clusters[i].mult});
        used[i] = used[match] = true;
    }
    // round-trip: expand and compare against the monic input
    std::vector<Complex> ec{Complex(1.0, 0.0)};
    for (const auto& e : entries)
        for (int k = 0; k < e.multiplicity; ++k) {
            std::vector<Complex> next(ec.size() + 1, Complex(0.0, 0.0));
            for (std::size_t t = 0; t < ec.size(); ++t) {
                next[t] -= ec[t] * e.root;
                next[t + 1] += ec[t];
            }
            ec = std::move(next);
        }
    if (ec.size() != monic.size()) return cand;
    double scale = 1.0;
    for (double v : monic) scale = std::max(scale, std::fabs(v));
    double err = 0.0;
    for (std::size_t i = 0; i < monic.size(); ++i)
        err = std::max(err, std::abs(ec[i] - Complex(monic[i], 0.0)));
    cand.entries = std::move(entries);
    cand.err = err / scale;
    cand.valid = true;
    return cand;
}

} // namespace

RootMultiset find_roots(const RealPolynomial& p) {
    const int n = p.degree();
    if (n < 1) throw DomainError("root finding needs degree >= 1");
    std::vector<double> monic = p.coeffs();
    double lc = monic.back();
    for (double& c : monic) c /= lc;
    monic.back() = 1.0;

    std::vector<Complex> raw;
    if (n == 1) {
        raw = {Complex(-monic[0], 0.0)};
    } else if (n == 2) {
        Complex b(monic[1], 0.0), c(monic[0], 0.0);
        Complex disc = std::sqrt(b * b - 4.0 * c);
        // pick the sign that avoids cancellation in -b -/+ disc
        Complex r1 = (std::abs(-b - disc) > std::abs(-b + disc)) ? (-b - disc) / 2.0 : (-b + disc) / 2.0;
        Complex r2 = (std::abs(r1) > 0.0) ? c / r1 : -b - r1;
        raw = {r1, r2};
    } else {
        raw = aberth(monic);
    }

    Candidate best;
    for (double tau : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        Candidate c = clusterAt(raw, monic, tau);
        if (c.valid && c.err <= best.err) best = std::move(c);
    }
    if (!best.valid || best.err > 1e-8)
        throw NonConvergence("root round-trip error above tolerance");
    return RootMultiset(best.entries, lc);
}

} // namespace momentlab
