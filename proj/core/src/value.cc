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

#include "igloo/value.h"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace igloo {

Value Value::Int(std::int64_t v) {
  Value out;
  out.kind_ = Kind::kInt;
  out.int_ = v;
  return out;
}

Value Value::Sym(std::string s) {
  Value out;
  out.kind_ = Kind::kSymbol;
  out.sym_ = std::make_shared<const std::string>(std::move(s));
  return out;
}

Value Value::Tuple(std::vector<Value> elems) {
  Value out;
  out.kind_ = Kind::kTuple;
  out.tuple_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return out;
}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::kInt) throw std::logic_error("value is not an integer");
  return int_;
}

const std::string& Value::as_symbol() const {
  if (kind_ != Kind::kSymbol) throw std::logic_error("value is not a symbol");
  return *sym_;
}

const std::vector<Value>& Value::elements() const {
  if (kind_ != Kind::kTuple) throw std::logic_error("value is not a tuple");
  return *tuple_;
}

std::strong_ordering Value::operator<=>(const Value& other) const {
  if (kind_ != other.kind_) {
    return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
  }
  switch (kind_) {
    case Kind::kUnit:
      return std::strong_ordering::equal;
    case Kind::kInt:
      return int_ <=> other.int_;
    case Kind::kSymbol:
      if (sym_ == other.sym_) return std::strong_ordering::equal;
      return sym_->compare(*other.sym_) <=> 0;
    case Kind::kTuple: {
      if (tuple_ == other.tuple_) return std::strong_ordering::equal;
      const auto& a = *tuple_;
      const auto& b = *other.tuple_;
      for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
      }
      return a.size() <=> b.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::kUnit:
      return "•";
    case Kind::kInt:
      return std::to_string(int_);
    case Kind::kSymbol:
      return *sym_;
    case Kind::kTuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < tuple_->size(); ++i) {
        if (i) out += ", ";
        out += (*tuple_)[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

void to_json(nlohmann::json& j, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kUnit:
      j = nullptr;
      break;
    case Value::Kind::kInt:
      j = v.as_int();
      break;
    case Value::Kind::kSymbol:
      j = v.as_symbol();
      break;
    case Value::Kind::kTuple: {
      j = nlohmann::json::array();
      for (const auto& e : v.elements()) j.push_back(e);
      break;
    }
  }
}

void from_json(const nlohmann::json& j, Value& v) {
  if (j.is_null()) {
    v = Value::Unit();
  } else if (j.is_number_integer()) {
    v = Value::Int(j.get<std::int64_t>());
  } else if (j.is_string()) {
    v = Value::Sym(j.get<std::string>());
  } else if (j.is_array()) {
    std::vector<Value> elems;
    for (const auto& e : j) elems.push_back(e.get<Value>());
    v = Value::Tuple(std::move(elems));
  } else {
    throw std::invalid_argument("unsupported JSON value: " + j.dump());
  }
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace igloo
