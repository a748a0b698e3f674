/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace soctherm {

// Bad value passed to an operation (empty sensor vector, index out of
// range, frequency off the voltage map, ...).
class invalid_input : public std::invalid_argument {
  public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Scenario/config problems, detected before epoch 0. CLI exit code 2.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// File could not be parsed; carries the offending line number (0 = whole file).
class parse_error : public config_error {
  public:
    parse_error(const std::string& what, std::size_t line)
        : config_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// Temperature left the model's validity range mid-run. CLI exit code 3.
class runaway_error : public std::runtime_error {
  public:
    runaway_error(const std::string& what, long epoch)
        : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}
    long epoch() const { return epoch_; }

  private:
    long epoch_;
};

// Probe series contained no throttle event to learn from.
class inference_error : public std::runtime_error {
  public:
    explicit inference_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace soctherm
