#include "slidesum/descriptors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace slidesum {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(begin, i - begin)));
      begin = i + 1;
    }
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view text, const char* what) {
  const auto t = trim(text);
  Int value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DescriptorError(std::string("bad ") + what + ": \"" + t + "\"");
  }
  return value;
}

double parse_real(std::string_view text, const char* what) {
  const auto t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw DescriptorError(std::string("bad ") + what + ": \"" + t + "\"");
  }
}

RationalFunction parse_function(const std::string& text) {
  try {
    return RationalFunction::parse(text);
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::exception& e) {
    throw DescriptorError(std::string("bad function \"") + text + "\": " + e.what());
  }
}

const std::vector<std::string>& allowed_keys(const std::string& kind) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> table = {
      {"legendre", {"c", "mult"}},
      {"mixed", {"order", "index", "f", "g", "c", "mult"}},
      {"kloosterman", {"c", "mult"}},
      {"sympower", {"d", "c", "mult"}},
      {"quadphase", {"h", "c", "mult"}},
      {"fourier", {"order", "index", "f", "g", "c", "mult"}},
      {"korobov", {"h", "c"}},
      {"residue", {"f", "c", "mult"}},
  };
  for (const auto& [name, keys] : table) {
    if (name == kind) return keys;
  }
  throw DescriptorError("unknown family kind \"" + kind + "\"");
}

std::vector<std::uint64_t> read_subset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot open subset file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream tokens(text);
  std::vector<std::uint64_t> out;
  std::string tok;
  while (tokens >> tok) {
    if (tok[0] == '#') {
      std::getline(tokens, tok);
      continue;
    }
    out.push_back(parse_int<std::uint64_t>(tok, "subset element"));
  }
  return out;
}

}  // namespace

std::optional<std::string> FamilyDescriptor::get(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string FamilyDescriptor::canonical() const {
  std::string out = kind;
  for (std::size_t i = 0; i < params.size(); ++i) {
    out += (i == 0 ? ':' : ',');
    out += params[i].first + "=" + params[i].second;
  }
  return out;
}

FamilyDescriptor parse_family(std::string_view text) {
  const auto t = trim(text);
  FamilyDescriptor desc;
  const auto colon = t.find(':');
  desc.kind = t.substr(0, colon);
  std::transform(desc.kind.begin(), desc.kind.end(), desc.kind.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  const auto& keys = allowed_keys(desc.kind);
  if (colon == std::string::npos) return desc;
  for (const auto& item : split(std::string_view(t).substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DescriptorError("family parameter without '=': \"" + item + "\"");
    auto key = trim(std::string_view(item).substr(0, eq));
    auto value = trim(std::string_view(item).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw DescriptorError("family " + desc.kind + " has no parameter \"" + key + "\"");
    }
    if (desc.get(key)) throw DescriptorError("repeated family parameter \"" + key + "\"");
    desc.params.emplace_back(std::move(key), std::move(value));
  }
  return desc;
}

BuiltFamily build_family(const FamilyDescriptor& desc, const FieldContext& ctx) {
  const auto p = ctx.p();
  auto param = [&](const char* key, const char* fallback) { return desc.get(key).value_or(fallback); };
  const auto c_text = desc.get("c");
  const double c_override = c_text ? parse_real(*c_text, "conductor") : 0.0;
  if (c_text && c_override < 1.0) throw DescriptorError("conductor must be at least 1");
  const bool mult = param("mult", "0") == "1";

  auto character = [&] {
    CharacterSpec chi{parse_int<std::uint64_t>(param("order", "1"), "character order"),
                      parse_int<std::uint64_t>(param("index", "0"), "character index")};
    if (chi.order == 0 || (p - 1) % chi.order != 0) {
      throw DescriptorError("character order " + std::to_string(chi.order) + " does not divide p-1");
    }
    return chi;
  };

  std::optional<BuiltFamily> out;
  const auto& kind = desc.kind;
  if (kind == "legendre" || kind == "mixed") {
    const auto chi = kind == "legendre" ? CharacterSpec::legendre() : character();
    const auto f = parse_function(kind == "legendre" ? "X" : param("f", "1"));
    const auto g = parse_function(kind == "legendre" ? "0" : param("g", "0"));
    auto phi = build_mixed_char(chi, f, g, ctx);
    const auto cls = mixed_char_is_fourier(chi, f, g, ctx) ? FamilyClass::additive_trace : FamilyClass::other;
    out = BuiltFamily{"", std::move(phi), cls, 0.0, std::nullopt, f, g};
  } else if (kind == "kloosterman") {
    out = BuiltFamily{"", build_kloosterman(ctx), FamilyClass::additive_trace, 0.0, SpecialKind::kloosterman,
                      std::nullopt, std::nullopt};
  } else if (kind == "sympower") {
    const auto d = parse_int<unsigned>(param("d", "2"), "symmetric power");
    out = BuiltFamily{"", build_sym_power(d, ctx), FamilyClass::additive_trace, 0.0, std::nullopt, std::nullopt,
                      std::nullopt};
  } else if (kind == "quadphase") {
    const auto h = parse_int<std::int64_t>(param("h", "1"), "h");
    out = BuiltFamily{"", build_quadratic_phase(ctx.reduce(h), ctx), FamilyClass::additive_trace, 0.0,
                      SpecialKind::quadratic_phase, std::nullopt, std::nullopt};
  } else if (kind == "fourier") {
    const auto chi = character();
    const auto f = parse_function(param("f", "1"));
    const auto g = parse_function(param("g", "X^3"));
    const auto psi = build_mixed_char(chi, f, g, ctx);
    out = BuiltFamily{"", build_fourier_family(psi), FamilyClass::additive_trace, 0.0, SpecialKind::fourier, f, g};
  } else if (kind == "korobov") {
    const auto h = parse_int<std::int64_t>(param("h", "1"), "h");
    out = BuiltFamily{"", build_korobov(ctx.reduce(h), ctx), FamilyClass::korobov, 0.0, SpecialKind::korobov,
                      std::nullopt, std::nullopt};
  } else if (kind == "residue") {
    const auto f = parse_function(param("f", "X^2"));
    if (!f.is_polynomial_mod(p) || f.denominator().degree() != 0) {
      throw DescriptorError("residue family needs a polynomial f");
    }
    try {
      auto image = build_residue_indicator(f.numerator(), ctx);
      out = BuiltFamily{"", std::move(image.indicator), FamilyClass::other, 0.0, std::nullopt, f, std::nullopt};
    } catch (const std::invalid_argument& e) {
      throw DescriptorError(std::string("residue family: ") + e.what());
    }
  } else {
    throw DescriptorError("unknown family kind \"" + kind + "\"");
  }

  auto& built = *out;
  if (c_text) built.phi = built.phi.with_conductor(c_override);
  built.conductor = built.phi.conductor_bound();
  built.name = desc.canonical();
  if (mult) {
    built.phi = restrict_multiplicative(built.phi, ctx);
    if (built.family_class == FamilyClass::additive_trace) built.family_class = FamilyClass::multiplicative;
    built.special.reset();
  }
  built.phi = built.phi.with_tag(built.name);
  return std::move(built);
}

BuiltFamily build_family(std::string_view text, const FieldContext& ctx) {
  return build_family(parse_family(text), ctx);
}

Region parse_region(std::string_view text, std::uint64_t m) {
  const auto t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw DescriptorError("region needs kind:spec, got \"" + t + "\"");
  const auto kind = t.substr(0, colon);
  const auto body = std::string_view(t).substr(colon + 1);
  try {
    if (kind == "interval") {
      const auto parts = split(body, ',');
      if (parts.size() != 2) throw DescriptorError("interval region is interval:start,len");
      const auto start = parse_int<std::int64_t>(parts[0], "interval start");
      const auto len = parse_int<std::uint64_t>(parts[1], "interval length");
      const auto mm = static_cast<std::int64_t>(m);
      return IntervalZm(m, static_cast<std::uint64_t>(((start % mm) + mm) % mm), len);
    }
    if (kind == "gap") {
      const auto parts = split(body, ';');
      GapSpec gap;
      gap.m = m;
      const auto mm = static_cast<std::int64_t>(m);
      const auto base = parse_int<std::int64_t>(parts[0], "gap base");
      gap.base = static_cast<std::uint64_t>(((base % mm) + mm) % mm);
      for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto axis = split(parts[i], ',');
        if (axis.size() != 2) throw DescriptorError("gap axis is step,count");
        const auto step = parse_int<std::int64_t>(axis[0], "gap step");
        gap.axes.push_back({static_cast<std::uint64_t>(((step % mm) + mm) % mm),
                            parse_int<std::uint64_t>(axis[1], "gap count")});
      }
      if (gap.axes.empty()) throw DescriptorError("gap region needs at least one axis");
      return gap;
    }
    if (kind == "subset") {
      if (!body.empty() && body[0] == '@') return SubsetZm(m, read_subset_file(std::string(body.substr(1))));
      std::vector<std::uint64_t> elems;
      for (const auto& item : split(body, ',')) elems.push_back(parse_int<std::uint64_t>(item, "subset element"));
      return SubsetZm(m, std::move(elems));
    }
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DescriptorError("region \"" + t + "\": " + e.what());
  }
  throw DescriptorError("unknown region kind \"" + kind + "\"");
}

std::vector<std::uint64_t> parse_integer_list(std::string_view text) {
  const auto t = trim(text);
  const auto dots = t.find("..");
  std::vector<std::uint64_t> out;
  if (dots != std::string::npos) {
    const auto lo = parse_int<std::uint64_t>(std::string_view(t).substr(0, dots), "range start");
    const auto hi = parse_int<std::uint64_t>(std::string_view(t).substr(dots + 2), "range end");
    if (hi < lo) throw DescriptorError("empty range \"" + t + "\"");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::string spaced = t;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream tokens(spaced);
  std::string tok;
  while (tokens >> tok) out.push_back(parse_int<std::uint64_t>(tok, "integer"));
  return out;
}

}  // namespace slidesum
