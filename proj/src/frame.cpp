#include "kset/frame.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "kset/errors.hpp"

namespace kset {

Frame::Frame(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty() || static_cast<int>(atoms_.size()) > kMaxAtoms) {
        throw ValidationError("frame must have between 1 and 24 atoms");
    }
    std::set<std::string> seen;
    for (const auto& a : atoms_) {
        if (a.empty()) throw ValidationError("atom names must be non-empty");
        if (!seen.insert(a).second) throw ValidationError("duplicate atom name: " + a);
    }
}

int Frame::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (atoms_[i] == name) return i;
    }
    return -1;
}

Event::Event(Frame frame, std::uint32_t mask) : frame_(std::move(frame)), mask_(mask) {
    if (mask & ~frame_.full_mask()) {
        throw ValidationError("event mask refers to atoms outside the frame");
    }
}

Event Event::singleton(const Frame& f, int atom) {
    if (atom < 0 || atom >= f.size()) throw ValidationError("atom index out of range");
    return Event(f, std::uint32_t{1} << atom);
}

Event Event::from_atoms(const Frame& f, const std::vector<std::string>& names) {
    std::uint32_t mask = 0;
    for (const auto& name : names) {
        int i = f.index_of(name);
        if (i < 0) throw ValidationError("unknown atom name: " + name);
        mask |= std::uint32_t{1} << i;
    }
    return Event(f, mask);
}

int Event::count() const { return std::popcount(mask_); }

Event Event::unite(const Event& o) const {
    if (frame_ != o.frame_) throw ValidationError("event union across different frames");
    return Event(frame_, mask_ | o.mask_);
}

Event Event::intersect(const Event& o) const {
    if (frame_ != o.frame_) throw ValidationError("event intersection across different frames");
    return Event(frame_, mask_ & o.mask_);
}

std::vector<int> Event::atom_indices() const {
    std::vector<int> out;
    for (int i = 0; i < frame_.size(); ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

Dist::Dist(Frame frame, std::vector<double> p) : frame_(std::move(frame)), p_(std::move(p)) {
    if (static_cast<int>(p_.size()) != frame_.size()) {
        throw ValidationError("distribution length does not match frame size");
    }
    double sum = 0.0;
    for (double w : p_) {
        if (!(w >= 0.0)) throw ValidationError("distribution weight must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("distribution weights must sum to 1");
    }
}

RandVar::RandVar(Frame frame, std::vector<double> x) : frame_(std::move(frame)), x_(std::move(x)) {
    if (static_cast<int>(x_.size()) != frame_.size()) {
        throw ValidationError("random variable length does not match frame size");
    }
    for (double v : x_) {
        if (!std::isfinite(v)) throw ValidationError("random variable values must be finite");
    }
}

Dist make_dist(const Frame& frame, const std::vector<double>& weights) {
    if (static_cast<int>(weights.size()) != frame.size()) {
        throw ValidationError("weight vector length does not match frame size");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("negative weight");
        sum += w;
    }
    if (sum <= 0.0) throw ValidationError("zero total mass");
    std::vector<double> p(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) p[i] = weights[i] / sum;
    return Dist(frame, std::move(p));
}

double prob(const Dist& dist, const Event& e) {
    if (dist.frame() != e.frame()) throw ValidationError("frame mismatch in prob");
    double s = 0.0;
    for (int i = 0; i < dist.size(); ++i) {
        if (e.contains(i)) s += dist[i];
    }
    return s;
}

double expectation(const Dist& dist, const RandVar& v) {
    if (dist.frame() != v.frame()) throw ValidationError("frame mismatch in expectation");
    double s = 0.0;
    for (int i = 0; i < dist.size(); ++i) s += dist[i] * v[i];
    return s;
}

Frame sub_frame(const Event& e) {
    std::vector<std::string> atoms;
    for (int i : e.atom_indices()) atoms.push_back(e.frame().atom(i));
    return Frame(std::move(atoms));
}

Dist condition_dist(const Dist& dist, const Event& e) {
    double pe = prob(dist, e);
    if (pe <= 0.0) throw NullEventError("conditioning on null event");
    std::vector<double> q;
    for (int i : e.atom_indices()) q.push_back(dist[i] / pe);
    return Dist(sub_frame(e), std::move(q));
}

}  // namespace kset
