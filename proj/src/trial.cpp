#include "fitts/trial.hpp"

#include <algorithm>
#include <cctype>

namespace fitts {

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::RPRG: return "RPRG";
    case Technique::RPLG: return "RPLG";
    case Technique::LPLG: return "LPLG";
    case Technique::LPRG: return "LPRG";
    case Technique::RPDW: return "RPDW";
  }
  return "?";
}

std::string_view to_string(Posture p) {
  return p == Posture::Sitting ? "Sitting" : "Standing";
}

std::string_view to_string(Hand h) { return h == Hand::Left ? "left" : "right"; }

std::optional<Technique> parse_technique(std::string_view text) {
  for (Technique t : kTechniques) {
    if (text == to_string(t)) return t;
  }
  return std::nullopt;
}

std::optional<Posture> parse_posture(std::string_view text) {
  auto iequals = [](std::string_view a, std::string_view b) {
    return std::ranges::equal(a, b, [](char x, char y) {
      return std::tolower(static_cast<unsigned char>(x)) ==
             std::tolower(static_cast<unsigned char>(y));
    });
  };
  for (Posture p : kPostures) {
    if (iequals(text, to_string(p))) return p;
  }
  return std::nullopt;
}

Hand pointer_hand(Technique t) {
  switch (t) {
    case Technique::LPLG:
    case Technique::LPRG:
      return Hand::Left;
    default:
      return Hand::Right;
  }
}

std::optional<Hand> gesture_hand(Technique t) {
  switch (t) {
    case Technique::RPRG:
    case Technique::LPRG:
      return Hand::Right;
    case Technique::RPLG:
    case Technique::LPLG:
      return Hand::Left;
    case Technique::RPDW:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fitts
