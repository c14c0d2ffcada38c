#include "orbitkit/decision.hpp"

#include <sstream>

namespace orbitkit {

std::string to_string(DecisionKind k) {
  switch (k) {
    case DecisionKind::Hit: return "Hit";
    case DecisionKind::NeverHits: return "NeverHits";
    case DecisionKind::Inconclusive: return "Inconclusive";
    case DecisionKind::Unsupported: return "Unsupported";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::EmptyArcIntersection: return "EmptyArcIntersection";
    case CertificateKind::ArcPointNoPower: return "ArcPointNoPower";
    case CertificateKind::UltimatelyNegativeAll: return "UltimatelyNegativeAll";
    case CertificateKind::CongruenceUnsat: return "CongruenceUnsat";
    case CertificateKind::SearchedToTheoreticalBound: return "SearchedToTheoreticalBound";
  }
  return "?";
}

Decision Decision::hit(const Integer& n) {
  Decision d;
  d.kind = DecisionKind::Hit;
  d.witness = n;
  return d;
}

Decision Decision::never(Certificate c) {
  Decision d;
  d.kind = DecisionKind::NeverHits;
  d.searched_up_to = c.searched_up_to;
  d.certificate = std::move(c);
  return d;
}

Decision Decision::inconclusive(const Integer& searched, std::optional<Threshold> bound, std::string note) {
  Decision d;
  d.kind = DecisionKind::Inconclusive;
  d.searched_up_to = searched;
  d.theoretical_bound = std::move(bound);
  d.note = std::move(note);
  return d;
}

Decision Decision::unsupported(std::string tag, std::string note) {
  Decision d;
  d.kind = DecisionKind::Unsupported;
  d.tag = std::move(tag);
  d.note = std::move(note);
  return d;
}

std::string render(const Decision& d) {
  std::ostringstream out;
  out << "outcome=" << to_string(d.kind) << "\n";
  if (d.witness) out << "witness=" << to_string(*d.witness) << "\n";
  if (!d.coefficients.empty()) {
    out << "coefficients=";
    for (std::size_t i = 0; i < d.coefficients.size(); ++i) out << (i ? "," : "") << to_string(d.coefficients[i]);
    out << "\n";
  }
  if (d.certificate) {
    const Certificate& c = *d.certificate;
    out << "certificate=" << to_string(c.kind) << "\n";
    out << "modulus=" << c.modulus << "\n";
    for (const auto& r : c.residues) {
      out << "residue." << r.residue << "=" << to_string(r.kind);
      if (r.bound) out << " bound=" << r.bound->to_string();
      if (r.sequence >= 0) out << " constraint=" << r.sequence;
      if (!r.detail.empty()) out << " " << r.detail;
      out << "\n";
    }
    if (!c.detail.empty()) out << "detail=" << c.detail << "\n";
  }
  if (d.kind == DecisionKind::Inconclusive || d.kind == DecisionKind::NeverHits)
    out << "searched_up_to=" << to_string(d.searched_up_to) << "\n";
  if (d.kind == DecisionKind::Inconclusive)
    out << "theoretical_bound=" << (d.theoretical_bound ? d.theoretical_bound->to_string() : "unknown") << "\n";
  if (!d.tag.empty()) out << "tag=" << d.tag << "\n";
  if (!d.note.empty()) out << "note=" << d.note << "\n";
  for (std::size_t i = 0; i < d.trace.size(); ++i) out << "trace." << i << "=" << d.trace[i] << "\n";
  return out.str();
}

}  // namespace orbitkit
