#pragma once

#include "duocat/bridge.hpp"

namespace duocat {

struct PullbackSquare {
  Id apex = kNone;
  Id to_x = kNone, to_y = kNone;  // legs apex -> x and apex -> y
};

/// All cones over the cospan (f: x -> z, g: y -> z) satisfying the pullback
/// universal property, checked exhaustively against every competing cone.
/// May be empty, or contain several distinct but isomorphic pullbacks.
std::vector<PullbackSquare> pullback_complete(const FinCategory& c, Id f, Id g, Budget& budget);

/// An extension of the ambigressive cospan (e: x -> z, i: y -> z): an
/// ambigressive square with new legs top: p -> y egressive and left:
/// p -> x ingressive.
struct AmbiExtension {
  Id apex = kNone;
  Id top = kNone;   // egressive, apex -> y
  Id left = kNone;  // ingressive, apex -> x
};
std::vector<AmbiExtension> ambigressive_extensions(const FinCategory& c, const MorClass& eg,
                                                   const MorClass& in, Id e_leg, Id i_leg);

/// Adequacy, decided two independent ways: (A) every ambigressive cospan has
/// a pullback and every ambigressive square is one; (B) every ambigressive
/// cospan extends to an ambigressive square, uniquely up to a strictly unique
/// connecting iso. The verdicts must agree.
struct AdequacyReport {
  bool pullback_criterion = false;
  bool extension_criterion = false;
  bool strict_extensions = false;  // every cospan has exactly one extension
  bool agree = false;
  std::string witness_pullback, witness_extension;
  bool adequate() const { return pullback_criterion && extension_criterion; }
};
AdequacyReport is_adequate(const FinCategory& c, const MorClass& eg, const MorClass& in,
                           Budget& budget);
AdequacyReport is_adequate(const FactorizationSystem& fs, Budget& budget);

/// A factorization double category is adequate when its horizontal reversal
/// is still one.
CornerReport is_adequate_double(const DblPtr& d);

/// Span category of an adequate system: morphisms are (egressive backward
/// leg, ingressive forward leg) pairs from a shared apex, composed through
/// ambigressive pullbacks. In the strict regime (exactly one extension per
/// cospan) morphisms are plain pairs; otherwise spans are taken up to the
/// connecting middle isos and composition uses the least extension.
struct SpanCategory {
  OfsPtr ofs;
  OfsPtr input;
  std::vector<std::pair<Id, Id>> span_of_mor;  // representative (back, fwd)
  bool strict = false;
};
SpanCategory span_category(const OfsPtr& fs, Budget& budget);

/// Strict-regime comparison: span_category(fs) agrees with
/// corners(horop(dclr(fs))) morphism-by-morphism, and dclr of the span
/// category is isomorphic to horop(dclr(fs)). Throws NonUniquePullback
/// outside the strict regime.
Report span_vs_horop(const OfsPtr& fs, Budget& budget);

/// Strict-regime involution: horop . horop is the identity on tables, and
/// span_category(span_category(fs)) is isomorphic to fs as a factorization
/// system, by an explicitly constructed functor.
Report involution_check(const OfsPtr& fs, Budget& budget);

/// Composition of composable spans is independent of the chosen pullback up
/// to middle iso (exhaustive over all pullbacks of every relevant cospan).
Report span_composition_independence(const OfsPtr& fs, Budget& budget);

}  // namespace duocat
