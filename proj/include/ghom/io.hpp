#pragma once

#include <filesystem>
#include <string>

#include "ghom/colouring.hpp"
#include "ghom/groupoid.hpp"
#include "ghom/int_matrix.hpp"
#include "ghom/scale.hpp"
#include "ghom/uf.hpp"

namespace ghom {

// Text readers. Syntax problems and unknown or missing fields throw
// ParseError naming the field; semantic problems (a part that is not a
// subgroupoid, a broken triangle inequality) surface as MalformedSpec from the
// validating constructors.
FiniteAmpleGroupoid parse_groupoid(const std::string& text);
Colouring parse_colouring(const FiniteAmpleGroupoid& G, const std::string& text);
// JSON array of arrow ids, or the strings "all" / "units".
ScaleSet parse_scale(const FiniteAmpleGroupoid& G, const std::string& text);
FiniteMetricSpace parse_metric(const std::string& text);
// "rows cols" then rows of whitespace-separated integers.
IntMatrix parse_matrix(const std::string& text);

// Every groupoid serializes as kind "table"; parse_groupoid inverts it up to
// arrow order.
std::string groupoid_to_json(const FiniteAmpleGroupoid& G);
std::string colouring_to_json(const Colouring& C);

std::string read_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace ghom
