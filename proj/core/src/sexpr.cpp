/* Copyright 2026 The ordcalc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ordcalc/sexpr.hpp"

#include <cctype>

#include "ordcalc/common.hpp"

namespace ordcalc {

bool Sexpr::is_form(std::string_view head) const {
  return is_list() && !items.empty() && items[0].is_atom && items[0].atom == head;
}

std::string Sexpr::str() const {
  if (is_atom) return atom;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ' ';
    s += items[i].str();
  }
  return s + ")";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view t) : text_(t) {}

  Sexpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      ++pos_;
      std::vector<Sexpr> xs;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          return Sexpr::make_list(std::move(xs));
        }
        xs.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    return Sexpr::make_atom(std::string(text_.substr(start, pos_ - start)));
  }

  void expect_end() {
    skip();
    if (pos_ != text_.size()) fail("trailing input");
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Sexpr parse_sexpr(std::string_view text) {
  Reader r(text);
  Sexpr e = r.read();
  r.expect_end();
  return e;
}

}  // namespace ordcalc
