// Copyright 2026 The igloo-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IGLOO_VALUE_H_
#define IGLOO_VALUE_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace igloo {

// An immutable, totally ordered value: unit, integer, symbol or tuple.
// Event parameters, I/O outputs and inputs are all Values.
class Value {
 public:
  enum class Kind { kUnit, kInt, kSymbol, kTuple };

  Value() = default;  // unit
  static Value Unit() { return Value(); }
  static Value Int(std::int64_t v);
  static Value Sym(std::string s);
  static Value Tuple(std::vector<Value> elems);
  static Value Tuple(std::initializer_list<Value> elems) {
    return Tuple(std::vector<Value>(elems));
  }

  Kind kind() const { return kind_; }
  bool is_unit() const { return kind_ == Kind::kUnit; }
  bool is_int() const { return kind_ == Kind::kInt; }
  bool is_symbol() const { return kind_ == Kind::kSymbol; }
  bool is_tuple() const { return kind_ == Kind::kTuple; }

  // Accessors throw std::logic_error on a kind mismatch.
  std::int64_t as_int() const;
  const std::string& as_symbol() const;
  const std::vector<Value>& elements() const;
  const Value& at(std::size_t i) const { return elements().at(i); }

  std::strong_ordering operator<=>(const Value& other) const;
  bool operator==(const Value& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  Kind kind_ = Kind::kUnit;
  std::int64_t int_ = 0;
  std::shared_ptr<const std::string> sym_;
  std::shared_ptr<const std::vector<Value>> tuple_;
};

// JSON: unit <-> null, int <-> number, symbol <-> string, tuple <-> array.
void to_json(nlohmann::json& j, const Value& v);
void from_json(const nlohmann::json& j, Value& v);

std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace igloo

#endif  // IGLOO_VALUE_H_
