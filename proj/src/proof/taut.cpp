#include <cstdint>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"

namespace glwb {
namespace {

// Propositional skeleton over opaque atoms 0..n-1.
struct Node {
  enum Kind { True, False, Atom, Or, And } kind;
  int atom = 0;
  bool negated = false;
  int left = -1, right = -1;
};

template <class Ptr>
class Skeleton {
 public:
  std::vector<Node> nodes;
  std::vector<Ptr> atoms;

  int add(Node n) {
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }

  // Atom for p, or for its complement (then negated). Identity is structural.
  int atom(const Ptr& p, const Ptr& comp) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (equal(atoms[i], p)) return add({Node::Atom, static_cast<int>(i), false});
      if (comp && equal(atoms[i], comp)) return add({Node::Atom, static_cast<int>(i), true});
    }
    atoms.push_back(p);
    if (atoms.size() > kMaxTautAtoms)
      throw Error(ErrorKind::TooManyAtoms, "more than " + std::to_string(kMaxTautAtoms) + " propositional atoms");
    return add({Node::Atom, static_cast<int>(atoms.size()) - 1, false});
  }

  bool valid(int root) const {
    const std::size_t n = atoms.size();
    const std::uint64_t rows = std::uint64_t{1} << n;
    const std::uint64_t words = rows <= 64 ? 1 : rows / 64;
    const std::uint64_t live = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
    static const std::uint64_t kPattern[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                              0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    std::vector<std::uint64_t> val(nodes.size());
    for (std::uint64_t w = 0; w < words; ++w) {
      // Children precede parents in `nodes`.
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& d = nodes[i];
        std::uint64_t v = 0;
        switch (d.kind) {
          case Node::True: v = ~std::uint64_t{0}; break;
          case Node::False: v = 0; break;
          case Node::Atom:
            v = d.atom < 6 ? kPattern[d.atom] : (((w >> (d.atom - 6)) & 1) ? ~std::uint64_t{0} : 0);
            if (d.negated) v = ~v;
            break;
          case Node::Or: v = val[d.left] | val[d.right]; break;
          case Node::And: v = val[d.left] & val[d.right]; break;
        }
        val[i] = v;
      }
      if ((val[root] & live) != live) return false;
    }
    return true;
  }
};

int build(Skeleton<FormPtr>& s, const FormPtr& f) {
  switch (f->kind) {
    case FormKind::True: return s.add({Node::True});
    case FormKind::False: return s.add({Node::False});
    case FormKind::Prop: return s.atom(f, gl::neg_prop(f->name));
    case FormKind::NegProp: return s.atom(f, gl::prop(f->name));
    case FormKind::Or:
    case FormKind::And: {
      int l = build(s, f->left), r = build(s, f->right);
      return s.add({f->kind == FormKind::Or ? Node::Or : Node::And, 0, false, l, r});
    }
    case FormKind::Diamond: return s.atom(f, complement(f));
    case FormKind::Neg: break;  // removed by normal_form
  }
  return s.add({Node::False});
}

int build(Skeleton<FlcPtr>& s, const FlcPtr& f) {
  switch (f->kind) {
    case FlcKind::True: return s.add({Node::True});
    case FlcKind::False: return s.add({Node::False});
    case FlcKind::Or:
    case FlcKind::And: {
      int l = build(s, f->left), r = build(s, f->right);
      return s.add({f->kind == FlcKind::Or ? Node::Or : Node::And, 0, false, l, r});
    }
    default: {
      FlcPtr comp;
      try {
        comp = flc_negate(f);
      } catch (const Error&) {
        // Open or chop-containing subformulas have no negation; they stay plain atoms.
      }
      return s.atom(f, comp);
    }
  }
}

}  // namespace

bool taut_check(const FormPtr& f) {
  Skeleton<FormPtr> s;
  int root = build(s, normal_form(f));
  return s.valid(root);
}

bool taut_check(const FlcPtr& f) {
  Skeleton<FlcPtr> s;
  int root = build(s, f);
  return s.valid(root);
}

bool taut_check(const Formula& f) {
  return std::visit([](const auto& p) { return taut_check(p); }, f);
}

}  // namespace glwb
