#include <minkspec/signs.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <minkspec/error.hpp>

namespace minkspec {

std::pair<int, int> SignedBlock::inertia() const noexcept {
  switch (type) {
    case BlockType::Simple: return epsilon < 0 ? std::pair{0, 1} : std::pair{1, 0};
    case BlockType::ComplexPair:
    case BlockType::Jordan2: return {1, 1};
    case BlockType::Jordan3: return {2, 1};
  }
  return {0, 0};
}

std::size_t CanonicalForm::order() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.size);
  return n;
}

std::pair<int, int> CanonicalForm::signature() const noexcept {
  std::pair<int, int> total{0, 0};
  for (const auto& b : blocks) {
    const auto [p, q] = b.inertia();
    total.first += p;
    total.second += q;
  }
  return total;
}

std::vector<SignedBlock> assign_signs(const EigenStructure& e, const SecularFunction& s) {
  const double margin = s.tolerances().sign_margin();
  std::vector<SignedBlock> blocks;
  for (const auto& r : e.records) {
    const double x = r.value.real();
    if (!r.is_real) {
      if (r.value.imag() > 0.0) blocks.push_back({BlockType::ComplexPair, r.value, 2, 0, false, false});
      continue;
    }
    std::ostringstream where;
    where.precision(17);
    where << " at eigenvalue " << x << " (a = " << s.shift() << ")";
    switch (r.jordan_block_size) {
      case 1: {
        const double slope = s.g1_at(x) - 1.0;
        if (std::abs(slope) <= margin) fail(ErrorKind::AmbiguousSign, "g'(x) - 1 vanishes" + where.str());
        blocks.push_back({BlockType::Simple, r.value, 1, slope > 0.0 ? 1 : -1, true, false});
        break;
      }
      case 2: {
        const double curvature = s.g2_at(x);
        if (std::abs(curvature) <= margin * s.g2_scale_at(x))
          fail(ErrorKind::AmbiguousSign, "g''(x) vanishes at a double root" + where.str());
        // The vanishing nu-curve bends like g''/(1 + g'), and for the Jordan chain
        // (A - x) v2 = v1 one has [v1, v2] = g''(x) / 2, so the sign follows g''.
        blocks.push_back({BlockType::Jordan2, r.value, 2, curvature > 0.0 ? 1 : -1, true, false});
        break;
      }
      case 3:
        blocks.push_back({BlockType::Jordan3, r.value, 3, 1, false, false});
        break;
      default:
        fail(ErrorKind::CanonicalViolation, "Jordan block of unsupported size" + where.str());
    }
  }
  return blocks;
}

CanonicalForm assemble_canonical_form(std::vector<SignedBlock> blocks, std::span<const double> detached,
                                      CaseLabel case_label) {
  CanonicalForm form;
  form.case_label = case_label;
  form.blocks = std::move(blocks);
  for (double x : detached) form.blocks.push_back({BlockType::Simple, Complex(x, 0.0), 1, 1, true, true});

  int nonsimple = 0;
  int negative_simple = 0;
  for (const auto& b : form.blocks) {
    if (b.type != BlockType::Simple) ++nonsimple;
    if (b.type == BlockType::Simple && b.epsilon < 0) ++negative_simple;
  }
  if (nonsimple > 1)
    fail(ErrorKind::CanonicalViolation, "more than one block of type 2, 3 or 4 (" + std::to_string(nonsimple) + ")");
  if (negative_simple > 1) {
    fail(ErrorKind::CanonicalViolation,
         "more than one real eigenvalue with negative sign (" + std::to_string(negative_simple) + ")");
  }
  const auto [pos, neg] = form.signature();
  const int n = static_cast<int>(form.order());
  if (pos != n - 1 || neg != 1) {
    fail(ErrorKind::CanonicalViolation, "H inertia (" + std::to_string(pos) + ", " + std::to_string(neg) +
                                            ") differs from (" + std::to_string(n - 1) + ", 1)");
  }
  return form;
}

std::string check_sign_census(const CanonicalForm& form, const EigenStructure& e, const InterlacingReport& report) {
  std::vector<const SignedBlock*> own;
  for (const auto& b : form.blocks)
    if (!b.detached) own.push_back(&b);

  const SignedBlock* negative = nullptr;
  const SignedBlock* jordan = nullptr;
  for (const auto* b : own) {
    if (b->type == BlockType::Simple && b->epsilon < 0) negative = b;
    if (b->type == BlockType::Jordan2) jordan = b;
  }
  auto real_values = [&] {
    std::vector<double> v;
    for (const auto& r : e.records)
      if (r.is_real) v.push_back(r.value.real());
    return v;
  }();

  switch (report.label) {
    case CaseLabel::C1a:
      if (!negative) return "case 1a without a negative simple eigenvalue";
      if (negative->eigenvalue.real() != *std::min_element(real_values.begin(), real_values.end()))
        return "case 1a: the negative sign is not on the smallest eigenvalue";
      return {};
    case CaseLabel::C3a:
      if (!negative) return "case 3a without a negative simple eigenvalue";
      if (negative->eigenvalue.real() != *std::max_element(real_values.begin(), real_values.end()))
        return "case 3a: the negative sign is not on the largest eigenvalue";
      return {};
    case CaseLabel::C4a: {
      if (!negative) return "case 4a without a negative simple eigenvalue";
      std::vector<double> hosted;
      for (const auto& r : e.records)
        if (r.is_real && r.interval_index == report.host_interval) hosted.push_back(r.value.real());
      std::sort(hosted.begin(), hosted.end());
      if (hosted.size() != 3 || negative->eigenvalue.real() != hosted[1])
        return "case 4a: the negative sign is not on the middle root of the host interval";
      return {};
    }
    case CaseLabel::C1b:
    case CaseLabel::C4c:
    case CaseLabel::C3b:
    case CaseLabel::C4b: {
      if (!jordan) return std::string("case ") + std::string(to_string(report.label)) + " without a size-2 block";
      const int expected = (report.label == CaseLabel::C1b || report.label == CaseLabel::C4c) ? 1 : -1;
      if (jordan->epsilon != expected) return std::string("case ") + std::string(to_string(report.label)) + ": wrong sign on the size-2 block";
      if (negative) return "negative simple eigenvalue alongside a size-2 block";
      return {};
    }
    case CaseLabel::C2:
    case CaseLabel::C4d:
      if (negative) return "negative simple eigenvalue alongside a complex pair or triple block";
      return {};
    case CaseLabel::DegenerateSmall:
      if (!negative) return "the single eigenvalue of a pole-free problem must carry -1";
      return {};
    case CaseLabel::Reducible:
      return {};
  }
  return {};
}

}  // namespace minkspec
