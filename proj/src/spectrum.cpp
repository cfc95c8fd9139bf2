#include "fqed/spectrum.hpp"

#include "fqed/errors.hpp"

#include <fstream>
#include <sstream>

namespace fqed {

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw DomainError("spectrum line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Table {
  std::string d, b;
  std::vector<double> k;
  std::vector<FourVector> j;
};

} // namespace

SpectrumInput parse_spectrum(std::istream& in) {
  enum class Section { none, levels, current, cutoff } section = Section::none;
  SpectrumInput out;
  std::vector<Table> tables;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(line_no, "unterminated section header");
      std::istringstream hs(line.substr(1, line.size() - 2));
      std::string name;
      hs >> name;
      if (name == "levels") {
        section = Section::levels;
      } else if (name == "cutoff") {
        section = Section::cutoff;
      } else if (name == "current") {
        Table t;
        if (!(hs >> t.d >> t.b)) bad(line_no, "[current d b] needs two level labels");
        tables.push_back(std::move(t));
        section = Section::current;
      } else {
        bad(line_no, "unknown section [" + name + "]");
      }
      continue;
    }
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    switch (section) {
    case Section::none: bad(line_no, "data outside a section");
    case Section::levels: {
      Level l;
      if (!(ls >> l.label >> l.energy)) bad(line_no, "expected: label energy");
      out.levels.push_back(std::move(l));
      break;
    }
    case Section::current: {
      double k = 0.0;
      FourVector j;
      if (!(ls >> k >> j.t >> j.x >> j.y >> j.z)) bad(line_no, "expected: k J0 Jx Jy Jz");
      tables.back().k.push_back(k);
      tables.back().j.push_back(j);
      break;
    }
    case Section::cutoff: {
      double k = 0.0;
      if (!(ls >> k)) bad(line_no, "expected a cutoff value");
      out.k_max = k;
      break;
    }
    }
    std::string extra;
    if (ls >> extra) bad(line_no, "trailing text '" + extra + "'");
  }
  for (auto& t : tables) {
    const auto key = std::make_pair(t.d, t.b);
    if (out.currents.count(key) || out.currents.count({t.b, t.d})) {
      throw DomainError("spectrum: duplicate current " + t.d + " " + t.b);
    }
    out.currents.emplace(key, TransitionCurrent::tabulated(std::move(t.k), std::move(t.j)));
  }
  out.validate();
  return out;
}

SpectrumInput load_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spectrum file " + path.string());
  return parse_spectrum(in);
}

} // namespace fqed
