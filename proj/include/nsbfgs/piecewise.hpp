#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsbfgs/errors.hpp"
#include "nsbfgs/precision.hpp"
#include "nsbfgs/vector.hpp"

namespace nsbfgs {

// One C^1 piece of a continuous selection. `lipschitz_on(a, b)`, when set,
// must return an upper bound on the Lipschitz constant of the gradient over
// the segment [a, b].
template <class S>
struct Selection {
    std::function<S(const Vector<S>&)> value;
    std::function<Vector<S>(const Vector<S>&)> gradient;
    std::function<S(const Vector<S>&, const Vector<S>&)> lipschitz_on;
};

enum class Aggregation { max };

// Index sets at a point x:
//   active        selections within the tie tolerance of f(x)
//   grad_active   active selections whose gradient equals the function's
//                 gradient; when the gradients of the active selections
//                 disagree, the point is flagged non-differentiable and
//                 grad_active reports the full active set, never a guess.
template <class S>
struct ActiveSets {
    std::vector<int> active;
    std::vector<int> grad_active;
    bool is_differentiable = false;
    std::optional<Vector<S>> active_gradient;
};

// A continuous selection with max aggregation: f(x) = max_i f_i(x).
template <class S>
class PiecewiseFunction {
  public:
    explicit PiecewiseFunction(std::vector<Selection<S>> selections,
                               Aggregation agg = Aggregation::max)
        : sel_(std::move(selections)), agg_(agg) {
        if (sel_.empty()) throw ConfigError("PiecewiseFunction: needs at least one selection");
        for (const auto& s : sel_)
            if (!s.value || !s.gradient)
                throw ConfigError("PiecewiseFunction: every selection needs value and gradient");
    }

    std::size_t pieces() const { return sel_.size(); }
    const Selection<S>& selection(std::size_t i) const { return sel_.at(i); }
    Aggregation aggregation() const { return agg_; }

    std::vector<S> selection_values(const Vector<S>& x) const {
        std::vector<S> vals;
        vals.reserve(sel_.size());
        for (std::size_t i = 0; i < sel_.size(); ++i) {
            S v = sel_[i].value(x);
            if (!scalar_ops<S>::finite(v))
                throw NonFiniteError("selection " + std::to_string(i) + " value is not finite");
            vals.push_back(std::move(v));
        }
        return vals;
    }

    // Lowest index attaining the maximum.
    static int argmax_index(const std::vector<S>& vals) {
        int best = 0;
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (vals[i] > vals[best]) best = static_cast<int>(i);
        return best;
    }

    S value(const Vector<S>& x) const {
        const auto vals = selection_values(x);
        return vals[argmax_index(vals)];
    }

    // Gradient of the lowest-index maximizing selection. At a tie this is the
    // practical choice Alg. users make when no differentiability check runs.
    Vector<S> gradient(const Vector<S>& x) const {
        const auto vals = selection_values(x);
        return sel_[argmax_index(vals)].gradient(x);
    }

    ActiveSets<S> active_sets(const Vector<S>& x, const S& tie_tol, const S& grad_tol) const {
        using std::abs;
        if (!(tie_tol > S(0)) || !(grad_tol > S(0)))
            throw ConfigError("active_sets: tolerances must be positive");

        const auto vals = selection_values(x);
        const int top = argmax_index(vals);
        const S fx = vals[top];
        const S cut = fx - tie_tol * (S(1) + abs(fx));

        ActiveSets<S> out;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (vals[i] >= cut) out.active.push_back(static_cast<int>(i));

        if (out.active.size() == 1) {
            out.is_differentiable = true;
            out.grad_active = out.active;
            out.active_gradient = sel_[out.active[0]].gradient(x);
            return out;
        }

        // Tie: differentiable only if every active gradient agrees.
        std::vector<Vector<S>> grads;
        grads.reserve(out.active.size());
        for (int i : out.active) grads.push_back(sel_[i].gradient(x));
        const S ref_norm = norm2(grads[0]);
        const S agree = grad_tol * (S(1) + ref_norm);
        bool all_agree = true;
        for (std::size_t a = 0; a + 1 < grads.size() && all_agree; ++a)
            for (std::size_t b = a + 1; b < grads.size() && all_agree; ++b)
                if (norm2(grads[a] - grads[b]) > agree) all_agree = false;

        out.is_differentiable = all_agree;
        out.grad_active = out.active;
        if (all_agree) out.active_gradient = grads[0];
        return out;
    }

  private:
    std::vector<Selection<S>> sel_;
    Aggregation agg_;
};

} // namespace nsbfgs
