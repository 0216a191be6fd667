#ifndef KSET_FRAME_HPP
#define KSET_FRAME_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kset {

/// A finite frame of mutually exclusive, exhaustive atoms. Events are
/// bitmask subsets of the atoms, so frames are capped at 24 atoms.
class Frame {
public:
    static constexpr int kMaxAtoms = 24;

    explicit Frame(std::vector<std::string> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    const std::string& atom(int i) const { return atoms_.at(i); }
    const std::vector<std::string>& atoms() const { return atoms_; }

    /// Index of a named atom, or -1 if absent.
    int index_of(const std::string& name) const;

    std::uint32_t full_mask() const { return (std::uint32_t{1} << size()) - 1; }

    friend bool operator==(const Frame& a, const Frame& b) { return a.atoms_ == b.atoms_; }
    friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

private:
    std::vector<std::string> atoms_;
};

/// An event: a subset of a frame's atoms, stored as a bitmask.
class Event {
public:
    Event(Frame frame, std::uint32_t mask);

    static Event empty(const Frame& f) { return Event(f, 0); }
    static Event full(const Frame& f) { return Event(f, f.full_mask()); }
    static Event singleton(const Frame& f, int atom);
    /// Event from named atoms; unknown names raise ValidationError.
    static Event from_atoms(const Frame& f, const std::vector<std::string>& names);

    const Frame& frame() const { return frame_; }
    std::uint32_t mask() const { return mask_; }
    bool contains(int atom) const { return (mask_ >> atom) & 1u; }
    int count() const;

    Event complement() const { return Event(frame_, ~mask_ & frame_.full_mask()); }
    Event unite(const Event& o) const;
    Event intersect(const Event& o) const;

    /// Atom indices in the event, ascending.
    std::vector<int> atom_indices() const;

    friend bool operator==(const Event& a, const Event& b) {
        return a.frame_ == b.frame_ && a.mask_ == b.mask_;
    }

private:
    Frame frame_;
    std::uint32_t mask_;
};

/// A probability distribution over a frame's atoms.
class Dist {
public:
    Dist(Frame frame, std::vector<double> p);

    const Frame& frame() const { return frame_; }
    int size() const { return frame_.size(); }
    double operator[](int i) const { return p_.at(i); }
    const std::vector<double>& weights() const { return p_; }

private:
    Frame frame_;
    std::vector<double> p_;
};

/// A real-valued random variable: one value per atom.
class RandVar {
public:
    RandVar(Frame frame, std::vector<double> x);

    const Frame& frame() const { return frame_; }
    double operator[](int i) const { return x_.at(i); }
    const std::vector<double>& values() const { return x_; }

private:
    Frame frame_;
    std::vector<double> x_;
};

/// Normalize nonnegative weights into a Dist. Rejects negative weights and
/// all-zero input.
Dist make_dist(const Frame& frame, const std::vector<double>& weights);

/// P(e) = sum of atom weights in e.
double prob(const Dist& dist, const Event& e);

/// E[v] under dist.
double expectation(const Dist& dist, const RandVar& v);

/// Classical conditioning. The result lives on the sub-frame of e's atoms.
Dist condition_dist(const Dist& dist, const Event& e);

/// The sub-frame spanned by e's atoms (order inherited from the parent).
Frame sub_frame(const Event& e);

}  // namespace kset

#endif
