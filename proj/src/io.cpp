#include "bhse/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "bhse/types.hpp"

namespace bhse {

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

void put_row(std::ofstream& out, double coord, cplx v) {
  out << format_number(coord) << ',' << format_number(v.real()) << ','
      << format_number(v.imag()) << '\n';
}

}  // namespace

void write_csv(const std::string& path, const GridFunction& u) {
  auto out = open_out(path);
  out << "x,re,im\n";
  for (std::size_t i = 0; i < u.size(); ++i) put_row(out, u.x(i), u.samples[i]);
}

void write_csv(const std::string& path, const TimeSignal& g) {
  auto out = open_out(path);
  out << "t,re,im\n";
  for (std::size_t i = 0; i < g.size(); ++i) put_row(out, g.t(i), g.samples[i]);
}

void write_csv(const std::string& path, const SpaceTimeField& f) {
  auto out = open_out(path);
  out << "t,x,re,im\n";
  for (std::size_t m = 0; m < f.steps(); ++m) {
    const auto& u = f.slices[m];
    const std::string ts = format_number(f.t(m));
    for (std::size_t i = 0; i < u.size(); ++i) {
      out << ts << ',' << format_number(u.x(i)) << ','
          << format_number(u.samples[i].real()) << ','
          << format_number(u.samples[i].imag()) << '\n';
    }
  }
}

json header_json(const GridFunction& u) {
  return json{{"dx", u.dx},
              {"x_min", u.x_min},
              {"domain_tag",
               u.domain == Domain::half_line ? "half_line" : "whole_line"},
              {"n", u.size()}};
}

json header_json(const TimeSignal& g) {
  return json{{"dt", g.dt},
              {"t0", g.t0},
              {"reg_exponent", g.reg_exponent},
              {"n", g.size()}};
}

void write_json(const std::string& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error("cannot create directory " + path + ": " + ec.message());
}

}  // namespace bhse
