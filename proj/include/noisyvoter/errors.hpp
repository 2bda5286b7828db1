// errors.hpp — one exception type carrying a typed error kind.
// Kinds mirror the per-operation error contracts; the CLI maps them to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace nv {

enum class Err {
  // graph
  SelfLoop,
  VertexOutOfRange,
  SideTooSmall,
  EmptySet,
  NotFound,
  Disconnected,
  // patterns
  ColorOutOfRange,
  NotBipartite,
  NotMultiple,
  ComponentOutOfRange,
  // dynamics
  BadParams,
  ParamMismatch,
  KOutOfRange,
  EventCap,
  // dual
  SameVertex,
  GridExhausted,
  EpochCap,
  // spectral
  TooLarge,
  SizeMismatch,
  NegativeTime,
  BadHG,
  // mixing
  StateSpaceTooLarge,
  NoConvergence,
  ShapeMismatch,
  // cli
  BadConfig,
  IoError,
};

const char* err_name(Err kind);

struct Error : std::runtime_error {
  Err kind;
  Error(Err k, const std::string& msg)
      : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(Err k, const std::string& msg) { throw Error(k, msg); }

inline const char* err_name(Err kind) {
  switch (kind) {
    case Err::SelfLoop: return "SelfLoop";
    case Err::VertexOutOfRange: return "VertexOutOfRange";
    case Err::SideTooSmall: return "SideTooSmall";
    case Err::EmptySet: return "EmptySet";
    case Err::NotFound: return "NotFound";
    case Err::Disconnected: return "Disconnected";
    case Err::ColorOutOfRange: return "ColorOutOfRange";
    case Err::NotBipartite: return "NotBipartite";
    case Err::NotMultiple: return "NotMultiple";
    case Err::ComponentOutOfRange: return "ComponentOutOfRange";
    case Err::BadParams: return "BadParams";
    case Err::ParamMismatch: return "ParamMismatch";
    case Err::KOutOfRange: return "KOutOfRange";
    case Err::EventCap: return "EventCap";
    case Err::SameVertex: return "SameVertex";
    case Err::GridExhausted: return "GridExhausted";
    case Err::EpochCap: return "EpochCap";
    case Err::TooLarge: return "TooLarge";
    case Err::SizeMismatch: return "SizeMismatch";
    case Err::NegativeTime: return "NegativeTime";
    case Err::BadHG: return "BadHG";
    case Err::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case Err::NoConvergence: return "NoConvergence";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::BadConfig: return "BadConfig";
    case Err::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace nv
