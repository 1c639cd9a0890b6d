#pragma once

#include "poscert/putinar.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace poscert {

/// A certificate file: generators, target and one of the two certificate kinds.
struct CertFile {
  std::vector<std::string> vars;
  GeneratorSet S;
  CertMode mode = CertMode::Module;
  ModuleCert module;      // mode == Module
  PreorderCert preorder;  // mode == Preorder

  const Polynomial& target() const { return mode == CertMode::Module ? module.target : preorder.target; }
  Verdict verify() const;
};

/// Problem file: `vars:`, `gen:` (repeated), `target:` (alias `poly:`),
/// `mode:`, `ball:`, `degree_cap:`, `grid:`, `vertex:` (repeated). `#` starts
/// a comment. Throws ParseError with line and column.
Problem parse_problem(std::string_view text);
std::string serialize_problem(const Problem& problem);

/// Certificate file: `mode:`, `vars:`, `gen:`, optional `homogeneous: true`,
/// `target:`, then `sigma <index|bits>:` blocks of `weight <q> square <poly>`
/// lines. Throws ParseError.
CertFile parse_certificate(std::string_view text);
std::string serialize_certificate(const CertFile& file);

CertFile make_cert_file(const std::vector<std::string>& vars, const GeneratorSet& S, const ModuleCert& cert);
CertFile make_cert_file(const std::vector<std::string>& vars, const GeneratorSet& S, const PreorderCert& cert);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
/// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace poscert
