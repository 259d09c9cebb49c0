#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vzor {

enum class Errc {
  InvalidArgument,
  DecodeError,
  // oracle-core
  ValueOutOfRange,
  EmptyInput,
  QuorumNotMet,
  NonMember,
  EpochMismatch,
  DuplicateObservation,
  // proof-engine
  MalformedWitness,
  NotInWitness,
  // vrf-committee
  UnverifiableScore,
  RegistryTooSmall,
  // chain-sim
  UnknownOperation,
  // restaking-hub
  InsufficientStake,
  AlreadyRegistered,
  UnknownReporter,
  MalformedFraudProof,
  UnknownParameter,
  // scenarios
  InvalidScenario,
  ConfigParse,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vzor
