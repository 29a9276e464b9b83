#pragma once

#include <optional>

#include "dwork/error.hpp"

/// Error code raised by fn, or nullopt if it returned normally.
template <class Fn>
std::optional<dwork::Errc> errc_of(Fn&& fn) {
  try {
    fn();
  } catch (const dwork::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
