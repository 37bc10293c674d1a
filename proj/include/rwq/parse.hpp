// Copyright 2026 The rwq Authors
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

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rwq/errors.hpp"
#include "rwq/expr.hpp"

namespace rwq {

namespace internal {

// Recursive descent over
//   sum     := product ('+' product)*
//   product := atom ('*' atom)*
//   atom    := IDENT | '(' sum ')'
//            | 'choose' '(' INT ',' list ')' | 'majority' '(' list ')'
//   list    := '[' sum (',' sum)* ']'
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr ParseAll() {
    SkipSpace();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = ParseSum();
    SkipSpace();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return e;
  }

 private:
  Expr ParseSum() {
    std::vector<Expr> terms{ParseProduct()};
    while (Accept('+')) terms.push_back(ParseProduct());
    return terms.size() == 1 ? terms.front() : Expr::Or(std::move(terms));
  }

  Expr ParseProduct() {
    std::vector<Expr> factors{ParseAtom()};
    while (Accept('*')) factors.push_back(ParseAtom());
    return factors.size() == 1 ? factors.front() : Expr::And(std::move(factors));
  }

  Expr ParseAtom() {
    SkipSpace();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    if (Accept('(')) {
      Expr inner = ParseSum();
      Expect(')');
      return inner;
    }
    std::size_t start = pos_;
    std::string ident = ParseIdentifier();
    if (ident == "choose" && Peek('(')) {
      Expect('(');
      SkipSpace();
      std::size_t k_pos = pos_;
      int k = ParseInteger();
      Expect(',');
      std::vector<Expr> operands = ParseList();
      Expect(')');
      try {
        return Expr::Choose(k, std::move(operands));
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " at position " +
                          std::to_string(k_pos));
      }
    }
    if (ident == "majority" && Peek('(')) {
      Expect('(');
      std::vector<Expr> operands = ParseList();
      Expect(')');
      int n = static_cast<int>(operands.size());
      try {
        return Expr::Choose(n / 2 + 1, std::move(operands));
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " at position " +
                          std::to_string(start));
      }
    }
    return Expr::Var(std::move(ident));
  }

  std::vector<Expr> ParseList() {
    Expect('[');
    std::vector<Expr> items{ParseSum()};
    while (Accept(',')) items.push_back(ParseSum());
    Expect(']');
    return items;
  }

  std::string ParseIdentifier() {
    SkipSpace();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return std::string(text_.substr(start, pos_ - start));
    }
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    throw ParseError("expected identifier, found '" + std::string(1, text_[pos_]) + "'",
                     pos_);
  }

  int ParseInteger() {
    SkipSpace();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", pos_);
    return static_cast<int>(value);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Peek(char ch) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == ch;
  }

  bool Accept(char ch) {
    if (!Peek(ch)) return false;
    ++pos_;
    return true;
  }

  void Expect(char ch) {
    if (Accept(ch)) return;
    if (pos_ == text_.size()) {
      throw ParseError(std::string("expected '") + ch + "' before end of input", pos_);
    }
    throw ParseError(std::string("expected '") + ch + "', found '" + text_[pos_] + "'",
                     pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace internal

/// Parses the quorum expression grammar: identifiers, `+` (or), `*` (and,
/// binds tighter), parentheses, `choose(k, [e1, ..., en])` and
/// `majority([e1, ..., en])`, which is choose(floor(n/2) + 1, ...).
///
/// Throws ParseError for malformed text and DomainError for an invalid
/// choose threshold or operand count.
inline Expr Parse(std::string_view text) {
  return internal::ExprParser(text).ParseAll();
}

}  // namespace rwq
