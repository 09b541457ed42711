#pragma once

#include "obstr/ainf.hpp"
#include "obstr/fincat.hpp"
#include "obstr/hochschild.hpp"

#include <json.hpp>

#include <string>

namespace obstr::io {

using nlohmann::json;

json load_file(const std::string& path);

FinCategory read_category(const json& j);
json write_category(const FinCategory& c);

// accepts a bimodule document, or the string "self" for the canonical bimodule
Bimodule read_bimodule(const json& j, const FinCategory& c);
json write_bimodule(const FinCategory& c, const Bimodule& m);

Module read_module(const json& j, const FinCategory& c);
json write_module(const FinCategory& c, const Module& u);

Cochain read_cochain(const json& j, const FinCategory& c, const Bimodule& m);
json write_cochain(const FinCategory& c, const Bimodule& m, const Cochain& x);

LinearFunctor read_linear_functor(const json& j, const FinCategory& src, const FinCategory& tgt);

CoverSpec read_cover_spec(const json& j);

AInfCategory read_ainf_category(const json& j);
json write_ainf_category(const AInfCategory& a);

AInfFunctor read_ainf_functor(const json& j, const AInfCategory& src, const AInfCategory& tgt);
json write_ainf_functor(const AInfCategory& src, const AInfCategory& tgt, const AInfFunctor& f);

// named stock categories for the CLI: dual_numbers, star_q, a2, two_cycle
FinCategory stock_category(const std::string& name);
bool is_stock_category(const std::string& name);

}  // namespace obstr::io
