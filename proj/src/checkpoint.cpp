#include "uavsim/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace uavsim {

namespace {

constexpr const char* kMagic = "uavsim-checkpoint";
constexpr int kVersion = 1;

void write_block(std::ostream& out, const char* name,
                 const std::vector<double>& v) {
  out << name << ' ' << v.size() << '\n';
  char buf[64];
  for (double x : v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    out.write(buf, res.ptr - buf);
    out.put('\n');
  }
}

std::vector<double> read_block(std::istream& in, const std::string& expected) {
  std::string name;
  std::size_t count = 0;
  if (!(in >> name >> count) || name != expected)
    throw IoError("checkpoint: expected block '" + expected + "'");
  std::vector<double> v(count);
  for (auto& x : v)
    if (!(in >> x)) throw IoError("checkpoint: truncated block " + expected);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write checkpoint: " + path);
  out << kMagic << " v" << kVersion << '\n';
  out << "config_hash " << (config_hash.empty() ? "-" : config_hash) << '\n';
  out << "dims " << params.state_dim << ' ' << params.action_dim << ' '
      << params.hidden << '\n';
  write_block(out, "w1", params.w1);
  write_block(out, "b1", params.b1);
  write_block(out, "w2", params.w2);
  write_block(out, "b2", params.b2);
  write_block(out, "wa", params.wa);
  write_block(out, "ba", params.ba);
  write_block(out, "wv", params.wv);
  write_block(out, "bv", params.bv);
  if (!out) throw IoError("failed writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  std::string magic, version;
  if (!(in >> magic >> version) || magic != kMagic || version != "v1")
    throw IoError("not a compatible checkpoint: " + path);

  Checkpoint ck;
  std::string tag;
  if (!(in >> tag >> ck.config_hash) || tag != "config_hash")
    throw IoError("checkpoint: missing config_hash");
  if (ck.config_hash == "-") ck.config_hash.clear();
  if (!(in >> tag >> ck.params.state_dim >> ck.params.action_dim >>
        ck.params.hidden) ||
      tag != "dims")
    throw IoError("checkpoint: missing dims");
  if (ck.params.state_dim < 1 || ck.params.action_dim < 1 ||
      ck.params.hidden < 1)
    throw IoError("checkpoint: invalid dimensions");

  ck.params.w1 = read_block(in, "w1");
  ck.params.b1 = read_block(in, "b1");
  ck.params.w2 = read_block(in, "w2");
  ck.params.b2 = read_block(in, "b2");
  ck.params.wa = read_block(in, "wa");
  ck.params.ba = read_block(in, "ba");
  ck.params.wv = read_block(in, "wv");
  ck.params.bv = read_block(in, "bv");

  PolicyParams shape = PolicyParams::zeros(
      ck.params.state_dim, ck.params.action_dim, ck.params.hidden);
  if (ck.params.w1.size() != shape.w1.size() ||
      ck.params.b1.size() != shape.b1.size() ||
      ck.params.w2.size() != shape.w2.size() ||
      ck.params.b2.size() != shape.b2.size() ||
      ck.params.wa.size() != shape.wa.size() ||
      ck.params.ba.size() != shape.ba.size() ||
      ck.params.wv.size() != shape.wv.size() ||
      ck.params.bv.size() != shape.bv.size())
    throw IoError("checkpoint: block sizes inconsistent with dims");
  return ck;
}

}  // namespace uavsim
