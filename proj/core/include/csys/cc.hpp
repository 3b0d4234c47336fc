#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csys/csystem.hpp"
#include "csys/stable_vector.hpp"
#include "csys/universe.hpp"

namespace csys {

class CCSystem;

// int : CC(C,p) -> C, ((Γ,Γ'),a) |-> a.
class IntFunctor : public Functor {
 public:
  IntFunctor(const CCSystem& cc);
  ObjId on_object(ObjId X) const override;
  MorId on_morphism(MorId f) const override;

 private:
  const CCSystem& cc_;
};

// The C-system of a universe category, truncated at length N. Objects are
// nested pairs (parent, F) with F : int(parent) -> U and int = (int parent; F);
// morphisms Γ -> Γ' are triples (Γ, Γ', a) with a : int Γ -> int Γ' in C.
class CCSystem : public CSystem {
 public:
  CCSystem(const Universe& u, int N);

  const Universe& universe() const { return u_; }
  const Category& base() const { return u_.category(); }
  const Functor& int_functor() const { return int_; }
  CSystemPresheaves& presheaves() const { return *P_; }

  ObjId int_object(ObjId X) const { return node(X).int_obj; }
  MorId int_morphism(MorId f) const { return mor(f).a; }
  // u_1 on objects: the F with X = (ft X, F); length > 0.
  MorId type_of(ObjId X) const;
  // (Γ, F) as an object; throws TruncationError beyond length N.
  ObjId child(ObjId G, MorId F) const;
  std::optional<ObjId> find_child(ObjId G, MorId F) const;
  // The triple (Γ, Γ', a); throws CompositionError on a typing mismatch.
  MorId morphism(ObjId G, ObjId G1, MorId a) const;

  // int°(D_p^k(Yo Y)), shared.
  PresheafPtr int_d_yo(int k, ObjId Y) const;

  std::string name() const override { return name_; }
  std::vector<ObjId> objects() const override;
  ObjId dom(MorId f) const override { return mor(f).dom; }
  ObjId cod(MorId f) const override { return mor(f).cod; }
  MorId identity(ObjId X) const override;
  const std::vector<MorId>& hom(ObjId X, ObjId Y) const override;
  MorId compose(MorId f, MorId g) const override;
  std::string object_label(ObjId X) const override;
  std::string morphism_label(MorId f) const override;
  std::optional<MorId> inverse(MorId f) const override;

  int length(ObjId X) const override { return node(X).length; }
  ObjId ft(ObjId X) const override;
  ObjId pt() const override { return ObjId(0); }
  MorId proj(ObjId X) const override;
  ObjId base_change(MorId f, ObjId T) const override;
  MorId q(MorId f, ObjId T) const override;
  int truncation() const override { return N_; }
  // Id *_F g for g : int(ft T) -> Ũ with g o p = F.
  std::vector<MorId> sections(ObjId T) const override;
  // The section Id *_{F'} (int(q_{n-1}) o int(o) o Q(F)), F' = int(q_{n-1}) o F.
  MorId section_base_change(MorId f, MorId o, int n) const override;

 private:
  struct Node {
    ObjId parent;
    MorId F;
    int length;
    ObjId int_obj;
    std::string label;
  };
  struct Mor {
    ObjId dom, cod;
    MorId a;
  };
  struct KeyHash {
    size_t operator()(const std::array<uint32_t, 3>& k) const {
      return (size_t{k[0]} * 0x9E3779B97F4A7C15ULL) ^ (size_t{k[1]} * 0xC2B2AE3D27D4EB4FULL) ^ k[2];
    }
  };
  const Node& node(ObjId X) const;
  const Mor& mor(MorId f) const;
  std::string short_label(MorId a) const;

  const Universe& u_;
  int N_;
  std::string name_;
  IntFunctor int_;
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, ObjId> child_index_;
  mutable std::mutex mu_;
  mutable StableVector<Mor, 14> mors_;
  mutable std::unordered_map<std::array<uint32_t, 3>, MorId, KeyHash> mor_index_;
  mutable std::unordered_map<uint64_t, std::unique_ptr<std::vector<MorId>>> homs_;
  mutable std::unordered_map<uint64_t, PresheafPtr> int_d_;
  std::unique_ptr<CSystemPresheaves> P_;
};

// int°(G)
PresheafPtr int_pullback(const CCSystem& cc, PresheafPtr G);

// u_1 : Ob_1 -> int°(Yo U), T |-> F, and its inverse F |-> (Γ, F).
PshMorPtr u1(const CCSystem& cc);
PshMorPtr u1_inverse(const CCSystem& cc);
// ũ_1 : Õb_1 -> int°(Yo Ũ), o |-> int(o) o Q(u_1(∂o)); the inverse sends F̃
// to the section Id *_{F̃ o p} F̃ of (Γ, F̃ o p).
PshMorPtr u1_tilde(const CCSystem& cc);
PshMorPtr u1_tilde_inverse(const CCSystem& cc);

// SD_p(G) : Sig(int° G) -> int°(D_p G), (T, g) |-> (u_1 T, g), with inverse.
// `DG` must be D_p(G).
PshMorPtr sd_p(const CCSystem& cc, PresheafPtr G, PresheafPtr DG);
PshMorPtr sd_p_inverse(const CCSystem& cc, PresheafPtr G, PresheafPtr DG);

// u_n : Ob_n -> int°(D_p^{n-1}(Yo U)), n >= 1, by the recursion
// SOb^-1 ; Sig(u_{n-1}) ; SD_p, and the unfolded nested form
// (u_1(ft^{n-1} T), (..., u_1(T))).
PshMorPtr u_n(const CCSystem& cc, int n);
PshMorPtr u_n_unfolded(const CCSystem& cc, int n);
PshMorPtr u_tilde_n(const CCSystem& cc, int n);
PshMorPtr u_tilde_n_unfolded(const CCSystem& cc, int n);

// int is a functor, bijective on hom-sets, and agrees with the universe data
// on objects, projections and q.
LawReport check_cc_int(const CCSystem& cc);
// u_1 natural and bijective; T = (Γ, u_1 T).
LawReport check_u1_iso(const CCSystem& cc);
// The same laws for a stand-in `f` : Ob_1 -> int°(Yo U) in place of u_1.
LawReport check_u1_iso(const CCSystem& cc, PshMorPtr f);
// ũ_1 natural and bijective, section counts against ∏ |El|, inverse formula.
LawReport check_u1_tilde_iso(const CCSystem& cc);
// ũ_1 ; int°(Yo p) = ∂ ; u_1
LawReport check_u1_boundary_square(const CCSystem& cc);
// SD_p(Yo Y) natural and bijective, natural in Yo(g) for g among `objs`.
LawReport check_sdp_natural(const CCSystem& cc, const std::vector<ObjId>& objs);
// u_n, ũ_n for 1 <= n <= max_n: recursion = unfolded form, bijective,
// natural, and ũ_n ; int°(D^{n-1} Yo p) = ∂ ; u_n.
LawReport check_un_iso(const CCSystem& cc, int max_n);

}  // namespace csys
