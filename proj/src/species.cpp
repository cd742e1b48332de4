#include "awi/species.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "awi/units.hpp"

namespace awi {

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double parse_number(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("missing value", line);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw ParseError("cannot parse number '" + t + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'", line);
  return v;
}

int parse_int(const std::string& text, int line) {
  const double v = parse_number(text, line);
  const int i = static_cast<int>(std::lround(v));
  if (static_cast<double>(i) != v) {
    throw ParseError("expected an integer, got '" + trim(text) + "'", line);
  }
  return i;
}

void require_positive(double v, const char* field, const std::string& who) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << who << ": " << field << " must be positive (got " << v << ")";
    throw ValidationError(os.str());
  }
}

// Shortest decimal form that round-trips through double.
std::string format_double(double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

double AtomSystem::delta_e() const {
  return units::energy_from_wavenumber(delta_e_wavenumber);
}

double AtomSystem::boltzmann_x(double temperature_k) const {
  if (!(temperature_k > 0.0)) {
    throw ValidationError("boltzmann_x: temperature must be positive");
  }
  return delta_e() / (constants::k_boltzmann * temperature_k);
}

void AtomSystem::validate() const {
  const std::string who = name.empty() ? "species" : name;
  require_positive(lambda_probe_nm, "lambda_probe", who);
  require_positive(lambda_drive_nm, "lambda_drive", who);
  require_positive(a21, "A21", who);
  require_positive(a31, "A31", who);
  require_positive(delta_e_wavenumber, "delta_E", who);
  require_positive(mass_amu, "mass", who);
  require_positive(sigma_23_A2, "sigma_23", who);
  require_positive(sigma_32_A2, "sigma_32", who);
  require_positive(sigma_b21_A2, "sigma_b21", who);
  require_positive(sigma_b31_A2, "sigma_b31", who);
  if (g1 <= 0) throw ValidationError(who + ": g1 must be a positive integer");
  if (g2 <= 0) throw ValidationError(who + ": g2 must be a positive integer");
  if (g3 <= 0) throw ValidationError(who + ": g3 must be a positive integer");
  // D2 lies above D1 in frequency.
  if (!(lambda_drive_nm < lambda_probe_nm)) {
    throw ValidationError(who + ": lambda_drive must be smaller than lambda_probe");
  }
}

void BathConditions::validate() const {
  if (pressure_torr < 0.0) {
    throw ValidationError("bath: pressure must be >= 0");
  }
  require_positive(temperature_k, "temperature", "bath");
  require_positive(buffer_mass_amu, "buffer mass", "bath");
}

SpeciesCatalog SpeciesCatalog::parse(const std::string& text) {
  SpeciesCatalog cat;
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  AtomSystem* atom = nullptr;        // current [species ...] target
  std::string buffer_name;           // current [buffer ...] target
  bool in_buffer = false;

  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      const std::string inside = trim(s.substr(1, s.size() - 2));
      const auto space = inside.find(' ');
      if (space == std::string::npos) {
        throw ParseError("section header needs a kind and a name", line);
      }
      const std::string kind = trim(inside.substr(0, space));
      const std::string name = trim(inside.substr(space + 1));
      if (name.empty()) throw ParseError("empty section name", line);
      if (kind == "species") {
        atom = &cat.atoms_[name];
        atom->name = name;
        in_buffer = false;
      } else if (kind == "buffer") {
        buffer_name = name;
        in_buffer = true;
        atom = nullptr;
      } else {
        throw ParseError("unknown section kind '" + kind + "'", line);
      }
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = s.substr(eq + 1);

    if (in_buffer) {
      if (key == "mass") {
        cat.buffer_masses_amu_[buffer_name] = parse_number(value, line);
      } else {
        throw ParseError("unknown buffer key '" + key + "'", line);
      }
      continue;
    }
    if (atom == nullptr) {
      throw ParseError("key '" + key + "' outside of any section", line);
    }

    if (key == "lambda_probe") atom->lambda_probe_nm = parse_number(value, line);
    else if (key == "lambda_drive") atom->lambda_drive_nm = parse_number(value, line);
    else if (key == "A21") atom->a21 = parse_number(value, line);
    else if (key == "A31") atom->a31 = parse_number(value, line);
    else if (key == "delta_E") atom->delta_e_wavenumber = parse_number(value, line);
    else if (key == "mass") atom->mass_amu = parse_number(value, line);
    else if (key == "g1") atom->g1 = parse_int(value, line);
    else if (key == "g2") atom->g2 = parse_int(value, line);
    else if (key == "g3") atom->g3 = parse_int(value, line);
    else if (key == "sigma_23") atom->sigma_23_A2 = parse_number(value, line);
    else if (key == "sigma_32") atom->sigma_32_A2 = parse_number(value, line);
    else if (key == "sigma_b21") atom->sigma_b21_A2 = parse_number(value, line);
    else if (key == "sigma_b31") atom->sigma_b31_A2 = parse_number(value, line);
    else throw ParseError("unknown species key '" + key + "'", line);
  }

  for (const auto& [name, a] : cat.atoms_) a.validate();
  for (const auto& [name, m] : cat.buffer_masses_amu_) {
    require_positive(m, "mass", "buffer " + name);
  }
  return cat;
}

SpeciesCatalog SpeciesCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const AtomSystem& SpeciesCatalog::atom(std::string_view name) const {
  const auto it = atoms_.find(std::string(name));
  if (it == atoms_.end()) {
    std::string known;
    for (const auto& [k, v] : atoms_) known += (known.empty() ? "" : ", ") + k;
    throw Error("unknown species '" + std::string(name) + "' (catalog has: " + known + ")");
  }
  return it->second;
}

bool SpeciesCatalog::has_atom(std::string_view name) const {
  return atoms_.count(std::string(name)) > 0;
}

double SpeciesCatalog::buffer_mass_amu(std::string_view name) const {
  const auto it = buffer_masses_amu_.find(std::string(name));
  if (it == buffer_masses_amu_.end()) {
    std::string known;
    for (const auto& [k, v] : buffer_masses_amu_) known += (known.empty() ? "" : ", ") + k;
    throw Error("unknown buffer gas '" + std::string(name) + "' (catalog has: " + known + ")");
  }
  return it->second;
}

std::vector<std::string> SpeciesCatalog::species_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : atoms_) out.push_back(k);
  return out;
}

std::vector<std::string> SpeciesCatalog::buffer_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : buffer_masses_amu_) out.push_back(k);
  return out;
}

BathConditions SpeciesCatalog::make_bath(std::string_view buffer, double pressure_torr,
                                         double temperature_k) const {
  BathConditions bath;
  bath.buffer = std::string(buffer);
  bath.buffer_mass_amu = buffer_mass_amu(buffer);
  bath.pressure_torr = pressure_torr;
  bath.temperature_k = temperature_k;
  bath.validate();
  return bath;
}

std::string SpeciesCatalog::serialize() const {
  std::ostringstream os;
  for (const auto& [name, a] : atoms_) {
    os << "[species " << name << "]\n";
    os << "lambda_probe = " << format_double(a.lambda_probe_nm) << "\n";
    os << "lambda_drive = " << format_double(a.lambda_drive_nm) << "\n";
    os << "A21 = " << format_double(a.a21) << "\n";
    os << "A31 = " << format_double(a.a31) << "\n";
    os << "delta_E = " << format_double(a.delta_e_wavenumber) << "\n";
    os << "mass = " << format_double(a.mass_amu) << "\n";
    os << "g1 = " << a.g1 << "\n";
    os << "g2 = " << a.g2 << "\n";
    os << "g3 = " << a.g3 << "\n";
    os << "sigma_23 = " << format_double(a.sigma_23_A2) << "\n";
    os << "sigma_32 = " << format_double(a.sigma_32_A2) << "\n";
    os << "sigma_b21 = " << format_double(a.sigma_b21_A2) << "\n";
    os << "sigma_b31 = " << format_double(a.sigma_b31_A2) << "\n";
    os << "\n";
  }
  for (const auto& [name, m] : buffer_masses_amu_) {
    os << "[buffer " << name << "]\n";
    os << "mass = " << format_double(m) << "\n\n";
  }
  return os.str();
}

void SpeciesCatalog::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write catalog file '" + path + "'");
  out << serialize();
}

// Wavelengths (vacuum) and lifetimes from the NIST Atomic Spectra Database;
// fine-structure transfer cross sections in He from Beahn, Condell &
// Mandelberg, Phys. Rev. 141, 83 (1966); collision broadening cross sections
// from Lewis, Phys. Rep. 58, 1 (1980).
const char* SpeciesCatalog::builtin_text() {
  return R"(# Alkali D-line data for the three-level V scheme
# |1> = S1/2, |2> = P3/2 (drive, D2), |3> = P1/2 (probe, D1).
#
# Units per key: lambda_* nm (vacuum), A* s^-1, delta_E cm^-1, mass amu,
# sigma_* A^2 (1 A^2 = 1e-16 cm^2).
#
# Sources: NIST ASD (wavelengths, decay rates, fine splittings);
# Beahn/Condell/Mandelberg Phys. Rev. 141, 83 (1966) (sigma_23, sigma_32,
# fine-structure transfer in He); Lewis Phys. Rep. 58, 1 (1980)
# (sigma_b21, sigma_b31, D-line broadening by He).

[species Na]
lambda_probe = 589.7558   # D1 3s-3p1/2
lambda_drive = 589.1583   # D2 3s-3p3/2
A21 = 6.154e7             # D2, tau = 16.25 ns
A31 = 6.135e7             # D1, tau = 16.30 ns
delta_E = 17.1963         # 3p fine splitting
mass = 22.98977
g1 = 2
g2 = 4
g3 = 2
sigma_23 = 41.1
sigma_32 = 77
sigma_b21 = 159
sigma_b31 = 137

[species K]
lambda_probe = 770.1083   # D1 4s-4p1/2
lambda_drive = 766.7009   # D2 4s-4p3/2
A21 = 3.792e7             # D2, tau = 26.37 ns
A31 = 3.742e7             # D1, tau = 26.72 ns
delta_E = 57.7103         # 4p fine splitting
mass = 39.0983
g1 = 2
g2 = 4
g3 = 2
sigma_23 = 52.8
sigma_32 = 84
sigma_b21 = 133
sigma_b31 = 100

[species Rb]
lambda_probe = 794.9789   # D1 5s-5p1/2
lambda_drive = 780.2414   # D2 5s-5p3/2
A21 = 3.8117e7            # D2, tau = 26.23 ns
A31 = 3.6129e7            # D1, tau = 27.68 ns
delta_E = 237.598         # 5p fine splitting
mass = 85.4678
g1 = 2
g2 = 4
g3 = 2
sigma_23 = 0.12
sigma_32 = 0.1
sigma_b21 = 145
sigma_b31 = 145

[buffer He]
mass = 4.002602
)";
}

const SpeciesCatalog& SpeciesCatalog::builtin() {
  static const SpeciesCatalog cat = parse(builtin_text());
  return cat;
}

}  // namespace awi
