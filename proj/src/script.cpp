#include "sq/script.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sq/parse.hpp"
#include "sq/print.hpp"

namespace sq {

namespace {

constexpr size_t kOrbitalCap = 12;

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void script_fail(const std::string& section, int line, const std::string& msg) {
  throw Error("script error in section '" + section + "' (line " +
              std::to_string(line) + "): " + msg);
}

int parse_twice_spin(const std::string& v, const std::string& section, int line) {
  auto slash = v.find('/');
  try {
    if (slash == std::string::npos) return 2 * std::stoi(v);
    if (v.substr(slash + 1) != "2") script_fail(section, line, "spin must be n or n/2");
    return std::stoi(v.substr(0, slash));
  } catch (const std::logic_error&) {
    script_fail(section, line, "malformed spin value: " + v);
  }
}

void parse_symbol_line(ModelScript& ms, const std::string& body, int line) {
  auto words = split_ws(body);
  if (words.size() < 2) script_fail("symbols", line, "expected '<name> <statistics> ...'");
  SymbolDecl d;
  d.name = words[0];
  if (words[1] == "fermion") d.statistics = Statistics::DiracFermion;
  else if (words[1] == "boson") d.statistics = Statistics::Boson;
  else if (words[1] == "majorana") d.statistics = Statistics::MajoranaFermion;
  else script_fail("symbols", line, "unknown statistics: " + words[1]);
  for (size_t i = 2; i < words.size(); ++i) {
    auto eq = words[i].find('=');
    if (eq == std::string::npos)
      script_fail("symbols", line, "expected key=value, got: " + words[i]);
    std::string key = words[i].substr(0, eq), val = words[i].substr(eq + 1);
    if (key == "spin") {
      d.twice_spin = parse_twice_spin(val, "symbols", line);
    } else if (key == "vacuum") {
      if (val == "empty") d.vacuum = VacuumKind::EmptyBand;
      else if (val == "fermi-sea") d.vacuum = VacuumKind::FermiSea;
      else script_fail("symbols", line, "vacuum must be empty or fermi-sea");
    } else if (key == "reorder") {
      if (val == "on") d.reorder = true;
      else if (val == "off") d.reorder = false;
      else script_fail("symbols", line, "reorder must be on or off");
    } else {
      script_fail("symbols", line, "unknown symbol option: " + key);
    }
  }
  ms.symbols.push_back(std::move(d));
}

void parse_param_line(ModelScript& ms, const std::string& body, int line) {
  auto words = split_ws(body);
  if (words.size() != 2) script_fail("params", line, "expected '<name> <kind>'");
  ParamKind k;
  if (words[1] == "integer") k = ParamKind::Integer;
  else if (words[1] == "real") k = ParamKind::Real;
  else if (words[1] == "complex") k = ParamKind::Complex;
  else if (words[1] == "grassmann") k = ParamKind::GrassmannConst;
  else script_fail("params", line, "unknown parameter kind: " + words[1]);
  ms.params.emplace_back(words[0], k);
}

void parse_basis_line(ModelScript& ms, const std::string& body, int line) {
  auto words = split_ws(body);
  if (words.size() < 3) script_fail("basis", line, "expected '<qs|qsz> <symbol> <sites...>'");
  if (words[0] == "qs") ms.basis_kind = BasisKind::QS;
  else if (words[0] == "qsz") ms.basis_kind = BasisKind::QSz;
  else script_fail("basis", line, "basis kind must be qs or qsz");
  ms.basis_symbol = words[1];
  for (size_t i = 2; i < words.size(); ++i) {
    try {
      ms.basis_sites.push_back(std::stoll(words[i]));
    } catch (const std::logic_error&) {
      script_fail("basis", line, "malformed site index: " + words[i]);
    }
  }
}

void parse_binding_line(ModelScript& ms, const std::string& body, int line) {
  auto eq = body.find('=');
  if (eq == std::string::npos) script_fail("bindings", line, "expected '<name> = <value>'");
  auto name_words = split_ws(body.substr(0, eq));
  if (name_words.size() != 1) script_fail("bindings", line, "expected one parameter name");
  auto val_words = split_ws(body.substr(eq + 1));
  if (val_words.size() != 1) script_fail("bindings", line, "expected one value");
  std::string v = val_words[0];
  ExactValue ev;
  if (!v.empty() && (v.back() == 'I' || v.back() == 'i')) {
    ev.imag = true;
    v.pop_back();
    if (!v.empty() && v.back() == '*') v.pop_back();
    if (v.empty() || v == "-" || v == "+") v += "1";
  }
  try {
    ev.magnitude = Rational::parse(v);
  } catch (const Error&) {
    script_fail("bindings", line, "malformed value: " + val_words[0]);
  }
  ms.bindings[name_words[0]] = ev;
}

void parse_output_line(ModelScript& ms, const std::string& body, int line,
                       bool& output_seen) {
  if (!output_seen) {
    ms.out_basis = false;
    ms.out_matrices = false;
    output_seen = true;
  }
  for (const auto& w : split_ws(body)) {
    if (w == "basis") ms.out_basis = true;
    else if (w == "matrices") ms.out_matrices = true;
    else script_fail("output", line, "unknown output target: " + w);
  }
}

}  // namespace

ModelScript parse_script(const std::string& text) {
  ModelScript ms;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  bool output_seen = false;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = raw;
    size_t end = line.find_last_not_of(" \t\r");
    if (end == std::string::npos) continue;
    line.erase(end + 1);
    bool indented = line[0] == ' ' || line[0] == '\t';
    size_t start = line.find_first_not_of(" \t");
    std::string body = line.substr(start);
    if (!indented) {
      auto colon = body.find(':');
      if (colon == std::string::npos)
        throw Error("script error (line " + std::to_string(lineno) +
                    "): expected a section header 'name:'");
      section = body.substr(0, colon);
      if (section != "symbols" && section != "params" && section != "hamiltonian" &&
          section != "basis" && section != "output" && section != "bindings")
        throw Error("script error (line " + std::to_string(lineno) +
                    "): unknown section: " + section);
      std::string rest = body.substr(colon + 1);
      size_t rs = rest.find_first_not_of(" \t");
      if (rs == std::string::npos) continue;
      body = rest.substr(rs);
    }
    if (section.empty())
      throw Error("script error (line " + std::to_string(lineno) +
                  "): content before any section header");
    if (section == "symbols") parse_symbol_line(ms, body, lineno);
    else if (section == "params") parse_param_line(ms, body, lineno);
    else if (section == "hamiltonian") ms.hamiltonian += (ms.hamiltonian.empty() ? "" : " ") + body;
    else if (section == "basis") parse_basis_line(ms, body, lineno);
    else if (section == "bindings") parse_binding_line(ms, body, lineno);
    else parse_output_line(ms, body, lineno, output_seen);
  }
  return ms;
}

Context build_context(const ModelScript& script, bool fermi_level_occupied) {
  ContextBuilder b;
  b.set_fermi_level_occupied(fermi_level_occupied);
  for (const auto& d : script.symbols) b.declare_symbol(d);
  for (const auto& [name, kind] : script.params) b.declare_param(name, kind);
  if (script.basis_kind) {
    if (2 * script.basis_sites.size() > kOrbitalCap)
      throw LimitError("orbital cap exceeded: " +
                       std::to_string(2 * script.basis_sites.size()) + " > " +
                       std::to_string(kOrbitalCap));
    std::vector<Index> sites;
    for (auto s : script.basis_sites) sites.push_back(Index::integer(s));
    b.add_site_orbitals(script.basis_symbol, sites);
  }
  return b.build();
}

std::string twice_spin_label(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string twice_spin_file_label(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  int mag = twice < 0 ? -twice : twice;
  return std::string(twice < 0 ? "-" : "") + std::to_string(mag / 2) + ".5";
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content, std::vector<std::string>& written) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw Error("cannot write output file: " + name);
  out << content;
  written.push_back(name);
}

ordered_json basis_json(const Context& ctx, const BasisSet& basis) {
  ordered_json root;
  root["kind"] = basis.kind == BasisKind::QS ? "qs" : "qsz";
  ordered_json sites = ordered_json::array();
  for (const auto& s : basis.sites) {
    sites.push_back(s.site.empty() ? s.sym : s.sym + "(" + s.site[0].str() + ")");
  }
  root["sites"] = std::move(sites);
  ordered_json orbitals = ordered_json::array();
  for (const auto& o : ctx.orbitals()) {
    std::string name = ctx.symbol(o.sym).name;
    if (o.site) name += "(" + o.site->str() + ")";
    if (o.spin >= 0) name += o.spin == 1 ? " up" : " down";
    orbitals.push_back(name);
  }
  root["orbitals"] = std::move(orbitals);
  ordered_json sectors = ordered_json::array();
  for (const auto& sec : basis.sectors) {
    ordered_json js;
    js["Q"] = sec.q;
    js[basis.kind == BasisKind::QS ? "S" : "Sz"] = twice_spin_label(sec.twice_spin);
    js["dim"] = sec.states.size();
    ordered_json states = ordered_json::array();
    for (const auto& st : sec.states) {
      ordered_json comps = ordered_json::array();
      for (const auto& [bits, coeff] : st.comps) {
        comps.push_back(ordered_json::array(
            {print_scalar(coeff, PrintStyle::Ascii), bits_string(bits)}));
      }
      states.push_back(std::move(comps));
    }
    js["states"] = std::move(states);
    sectors.push_back(std::move(js));
  }
  root["sectors"] = std::move(sectors);
  return root;
}

}  // namespace

std::vector<std::string> run_script(const ModelScript& script, const Context& ctx,
                                    const std::string& outdir, std::ostream& log) {
  if (script.hamiltonian.empty()) throw Error("script has no hamiltonian section");
  if (!script.basis_kind) throw Error("script has no basis section");
  Expr h = parse_expr(ctx, script.hamiltonian);

  std::vector<SiteRef> sites;
  for (auto s : script.basis_sites)
    sites.emplace_back(script.basis_symbol, std::vector<Index>{Index::integer(s)});
  BasisSet basis = *script.basis_kind == BasisKind::QS ? qsbasis(ctx, sites)
                                                       : qszbasis(ctx, sites);
  BlockMatrix blocks = make_blocks(ctx, h, basis);
  BlockMatrix numeric = blocks;
  bool have_bindings = !script.bindings.empty();
  if (have_bindings) {
    numeric = substitute_blocks(ctx, blocks, script.bindings);
    // Emit decimal entries only when the bindings pin every parameter down.
    for (const auto& blk : numeric.blocks) {
      for (const auto& e : blk.entries) {
        try {
          (void)e.to_complex();
        } catch (const Error&) {
          log << "note: entries stay symbolic under the given bindings; "
                 "numeric output omitted\n";
          have_bindings = false;
          break;
        }
      }
      if (!have_bindings) break;
    }
  }

  std::vector<std::string> written;
  if (script.out_basis) {
    write_file(outdir, "basis.json", basis_json(ctx, basis).dump(2) + "\n", written);
  }
  if (script.out_matrices) {
    const char* spin_key = basis.kind == BasisKind::QS ? "S" : "Sz";
    for (size_t bi = 0; bi < blocks.blocks.size(); ++bi) {
      const Block& blk = blocks.blocks[bi];
      const Block& num = numeric.blocks[bi];
      std::string stem = "matrix_" + std::to_string(blk.q) + "_" +
                         twice_spin_file_label(blk.twice_spin);
      ordered_json js;
      js["Q"] = blk.q;
      js[spin_key] = twice_spin_label(blk.twice_spin);
      js["dim"] = blk.dim;
      ordered_json rows = ordered_json::array();
      for (int r = 0; r < blk.dim; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < blk.dim; ++c)
          row.push_back(print_scalar(blk.at(r, c), PrintStyle::Ascii));
        rows.push_back(std::move(row));
      }
      js["entries"] = std::move(rows);
      if (have_bindings) {
        ordered_json nrows = ordered_json::array();
        for (int r = 0; r < blk.dim; ++r) {
          ordered_json row = ordered_json::array();
          for (int c = 0; c < blk.dim; ++c) {
            auto v = num.at(r, c).to_complex();
            row.push_back(ordered_json::array({v.real(), v.imag()}));
          }
          nrows.push_back(std::move(row));
        }
        js["entries_numeric"] = std::move(nrows);
      }
      write_file(outdir, stem + ".json", js.dump(2) + "\n", written);

      std::ostringstream txt;
      txt << "sector Q=" << blk.q << " " << spin_key << "="
          << twice_spin_label(blk.twice_spin) << " dim=" << blk.dim << "\n";
      for (int r = 0; r < blk.dim; ++r) {
        txt << " ";
        for (int c = 0; c < blk.dim; ++c)
          txt << " " << print_scalar(blk.at(r, c), PrintStyle::Ascii);
        txt << "\n";
      }
      if (have_bindings) {
        txt << "numeric:\n";
        for (int r = 0; r < blk.dim; ++r) {
          txt << " ";
          for (int c = 0; c < blk.dim; ++c) {
            auto v = num.at(r, c).to_complex();
            txt << " " << v.real();
            if (v.imag() != 0.0) txt << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
          }
          txt << "\n";
        }
      }
      write_file(outdir, stem + ".txt", txt.str(), written);
    }
  }
  log << "basis sectors: " << basis.sectors.size()
      << ", states (with multiplicity): " << basis.total_states() << "\n";
  for (const auto& f : written) log << "wrote " << f << "\n";
  return written;
}

}  // namespace sq
