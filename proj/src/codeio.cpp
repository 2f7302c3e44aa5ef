#include "geolrc/codeio.hpp"

#include <fstream>
#include <sstream>

namespace geolrc {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

long to_long(const std::string& w, int line) {
  try {
    std::size_t pos = 0;
    long v = std::stol(w, &pos);
    if (pos != w.size()) throw ConfigError("bad integer '" + w + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad integer '" + w + "'", line);
  }
}

}  // namespace

void write_code(std::ostream& os, const LinearCode& code) {
  const Field& f = *code.field;
  os << f.order() << ' ' << f.characteristic() << ' ' << f.degree() << ' ' << code.n << ' ' << code.k << ' '
     << code.locality() << ' ' << code.delta << ' ' << code.partitions.size() << '\n';
  os << "modulus";
  for (auto c : f.modulus()) os << ' ' << c;
  os << '\n';
  os << "family " << (code.family.empty() ? "unknown" : code.family) << '\n';
  for (std::size_t i = 0; i < code.generator.rows; ++i) {
    for (std::size_t j = 0; j < code.generator.cols; ++j) os << (j ? " " : "") << f.format(code.generator.at(i, j));
    os << '\n';
  }
  for (const auto& p : code.partitions) {
    os << "partition " << p.r << " :";
    for (std::size_t s = 0; s < p.sets.size(); ++s) {
      if (s) os << " |";
      for (auto c : p.sets[s].columns) os << ' ' << c;
    }
    os << '\n';
  }
  for (std::size_t pi = 0; pi < code.partitions.size(); ++pi) {
    const auto& p = code.partitions[pi];
    for (std::size_t s = 0; s < p.sets.size(); ++s) {
      const Matrix& e = p.sets[s].e;
      if (e.rows == 0) continue;
      os << "emat " << pi << ' ' << s << " :";
      for (std::size_t i = 0; i < e.rows; ++i) {
        if (i) os << " ;";
        for (std::size_t j = 0; j < e.cols; ++j) os << ' ' << f.format(e.at(i, j));
      }
      os << '\n';
    }
  }
}

std::string code_to_string(const LinearCode& code) {
  std::ostringstream os;
  write_code(os, code);
  return os.str();
}

LinearCode read_code(std::istream& is) {
  std::vector<std::pair<int, std::string>> lines;
  int no = 0;
  for (std::string s; std::getline(is, s);) {
    ++no;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    auto ws = split_ws(s);
    if (ws.empty() || ws[0][0] == '#') continue;
    lines.emplace_back(no, s);
  }
  if (lines.size() < 2) throw ConfigError("code file is truncated");
  auto head = split_ws(lines[0].second);
  if (head.size() != 8) throw ConfigError("header needs: q p m n k r delta partitions", lines[0].first);
  std::vector<long> h;
  for (const auto& w : head) h.push_back(to_long(w, lines[0].first));
  auto mod = split_ws(lines[1].second);
  if (mod.empty() || mod[0] != "modulus") throw ConfigError("expected a modulus line", lines[1].first);
  std::vector<std::uint32_t> coeffs;
  for (std::size_t i = 1; i < mod.size(); ++i) coeffs.push_back(static_cast<std::uint32_t>(to_long(mod[i], lines[1].first)));
  FieldPtr fp;
  try {
    fp = make_field(static_cast<std::uint32_t>(h[1]), static_cast<std::uint32_t>(h[2]), coeffs);
  } catch (const Error& e) {
    throw ConfigError(e.what(), lines[1].first);
  }
  if (fp->order() != static_cast<std::uint64_t>(h[0])) throw ConfigError("q does not equal p^m", lines[0].first);
  const Field& f = *fp;

  LinearCode code;
  code.field = fp;
  code.n = static_cast<std::size_t>(h[3]);
  code.delta = static_cast<int>(h[6]);
  std::size_t idx = 2;
  if (idx < lines.size()) {
    auto ws = split_ws(lines[idx].second);
    if (ws[0] == "family") {
      if (ws.size() != 2) throw ConfigError("family line takes one tag", lines[idx].first);
      code.family = ws[1];
      ++idx;
    }
  }
  std::vector<std::vector<Elem>> rows;
  for (; idx < lines.size(); ++idx) {
    auto ws = split_ws(lines[idx].second);
    if (ws[0] == "partition" || ws[0] == "emat") break;
    if (ws.size() != code.n)
      throw ConfigError("generator row has " + std::to_string(ws.size()) + " entries, expected " +
                            std::to_string(code.n), lines[idx].first);
    std::vector<Elem> row;
    for (const auto& w : ws) {
      try {
        row.push_back(f.parse_literal(w));
      } catch (const Error& e) {
        throw ConfigError(e.what(), lines[idx].first);
      }
    }
    rows.push_back(std::move(row));
  }
  code.generator = rows.empty() ? Matrix(0, code.n) : Matrix::from_rows(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) code.row_labels.push_back("row " + std::to_string(i));
  for (std::size_t c = 0; c < code.n; ++c) code.column_labels.push_back(std::to_string(c));

  for (; idx < lines.size(); ++idx) {
    const int ln = lines[idx].first;
    const std::string& s = lines[idx].second;
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("expected ':'", ln);
    auto lead = split_ws(s.substr(0, colon));
    const std::string body = s.substr(colon + 1);
    if (lead[0] == "partition") {
      if (lead.size() != 2) throw ConfigError("partition line: partition <r> : ...", ln);
      Partition p;
      p.r = static_cast<std::size_t>(to_long(lead[1], ln));
      for (const auto& grp : split_on(body, '|')) {
        HelperSet hs;
        for (const auto& w : split_ws(grp)) {
          long c = to_long(w, ln);
          if (c < 0 || static_cast<std::size_t>(c) >= code.n) throw ConfigError("column index out of range", ln);
          hs.columns.push_back(static_cast<std::size_t>(c));
        }
        if (hs.columns.empty()) throw ConfigError("empty helper set", ln);
        hs.label = "set " + std::to_string(p.sets.size());
        p.sets.push_back(std::move(hs));
      }
      code.partitions.push_back(std::move(p));
    } else if (lead[0] == "emat") {
      if (lead.size() != 3) throw ConfigError("emat line: emat <partition> <set> : ...", ln);
      const long pi = to_long(lead[1], ln), si = to_long(lead[2], ln);
      if (pi < 0 || static_cast<std::size_t>(pi) >= code.partitions.size() || si < 0 ||
          static_cast<std::size_t>(si) >= code.partitions[static_cast<std::size_t>(pi)].sets.size())
        throw ConfigError("emat refers to an unknown helper set", ln);
      auto& hs = code.partitions[static_cast<std::size_t>(pi)].sets[static_cast<std::size_t>(si)];
      std::vector<std::vector<Elem>> er;
      for (const auto& rs : split_on(body, ';')) {
        std::vector<Elem> row;
        for (const auto& w : split_ws(rs)) {
          try {
            row.push_back(f.parse_literal(w));
          } catch (const Error& e) {
            throw ConfigError(e.what(), ln);
          }
        }
        er.push_back(std::move(row));
      }
      for (const auto& row : er)
        if (row.size() != er[0].size()) throw ConfigError("ragged e-matrix", ln);
      if (er.size() != hs.columns.size()) throw ConfigError("e-matrix needs one row per helper-set column", ln);
      hs.e = Matrix::from_rows(er);
    } else {
      throw ConfigError("unexpected line after the partitions", ln);
    }
  }
  if (code.partitions.size() != static_cast<std::size_t>(h[7]))
    throw ConfigError("header announces " + std::to_string(h[7]) + " partitions, found " +
                      std::to_string(code.partitions.size()));
  try {
    finalize_code(code);
  } catch (const ConstructionError& e) {
    throw ConfigError(e.what());
  }
  if (code.k != static_cast<std::size_t>(h[4]))
    throw ConfigError("header k = " + std::to_string(h[4]) + " but the rows have rank " + std::to_string(code.k),
                      lines[0].first);
  if (!code.partitions.empty() && code.locality() != static_cast<std::size_t>(h[5]))
    throw ConfigError("header r does not match the first partition", lines[0].first);
  return code;
}

LinearCode code_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_code(in);
}

void save_code(const std::string& path, const LinearCode& code) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_code(out, code);
  if (!out) throw Error("write failed for " + path);
}

LinearCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read_code(in);
}

}  // namespace geolrc
