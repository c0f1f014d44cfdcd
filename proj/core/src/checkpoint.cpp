#include "box2el/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "box2el/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "parameter blobs are little-endian; add byte swapping for this platform");

namespace box2el {

namespace {

constexpr int kFormatVersion = 1;
constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string b64_encode(const unsigned char* data, size_t n) {
  std::string out;
  out.reserve((n + 2) / 3 * 4);
  for (size_t i = 0; i < n; i += 3) {
    unsigned v = data[i] << 16;
    if (i + 1 < n) v |= data[i + 1] << 8;
    if (i + 2 < n) v |= data[i + 2];
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += i + 1 < n ? kB64Alphabet[(v >> 6) & 63] : '=';
    out += i + 2 < n ? kB64Alphabet[v & 63] : '=';
  }
  return out;
}

std::vector<unsigned char> b64_decode(const std::string& text) {
  int table[256];
  std::fill(std::begin(table), std::end(table), -1);
  for (int i = 0; i < 64; ++i) table[static_cast<unsigned char>(kB64Alphabet[i])] = i;
  std::vector<unsigned char> out;
  out.reserve(text.size() / 4 * 3);
  unsigned acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = table[static_cast<unsigned char>(c)];
    if (v < 0) throw DataError("invalid base64 character in checkpoint");
    acc = (acc << 6) | static_cast<unsigned>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<unsigned char>((acc >> bits) & 0xff));
    }
  }
  return out;
}

std::string encode_doubles(const double* data, size_t n) {
  return b64_encode(reinterpret_cast<const unsigned char*>(data), n * sizeof(double));
}

std::vector<double> decode_doubles(const std::string& text, size_t expect) {
  std::vector<unsigned char> bytes = b64_decode(text);
  if (bytes.size() != expect * sizeof(double)) {
    throw DataError("parameter blob has " + std::to_string(bytes.size()) +
                    " bytes, expected " + std::to_string(expect * sizeof(double)));
  }
  std::vector<double> out(expect);
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

}  // namespace

std::string checkpoint_to_string(const EmbeddingStore& store) {
  const StoreLayout& L = store.layout();
  const auto& p = store.params();
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["dim"] = L.dim;
  j["seed"] = store.seed();
  j["role_mode"] = role_mode_name(store.role_mode);
  j["signature_hash"] = store.signature().content_hash();
  j["concepts"] = store.signature().concepts();
  j["roles"] = store.signature().roles();
  j["individuals"] = store.signature().individuals();

  nlohmann::json blocks;
  size_t nd = static_cast<size_t>(L.dim);
  blocks["concept_lower"] = encode_doubles(p.data() + L.concept_lower(0), L.n_concepts * nd);
  blocks["concept_delta"] = encode_doubles(p.data() + L.concept_delta(0), L.n_concepts * nd);
  blocks["individual_point"] =
      encode_doubles(p.data() + L.individual_point(0), L.n_individuals * nd);
  blocks["bump"] = encode_doubles(p.data() + L.bump(0), (L.n_concepts + L.n_individuals) * nd);
  blocks["role_head_lower"] = encode_doubles(p.data() + L.role_head_lower(0), L.n_roles * nd);
  blocks["role_head_delta"] = encode_doubles(p.data() + L.role_head_delta(0), L.n_roles * nd);
  blocks["role_tail_lower"] = encode_doubles(p.data() + L.role_tail_lower(0), L.n_roles * nd);
  blocks["role_tail_delta"] = encode_doubles(p.data() + L.role_tail_delta(0), L.n_roles * nd);
  j["params"] = std::move(blocks);
  return j.dump(2) + "\n";
}

EmbeddingStore checkpoint_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
  try {
    int version = j.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw DataError("unsupported checkpoint format version " + std::to_string(version));
    }
    int dim = j.at("dim").get<int>();
    std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    RoleMode mode = role_mode_from_name(j.at("role_mode").get<std::string>());

    Signature sig;
    for (const auto& c : j.at("concepts")) {
      std::string name = c.get<std::string>();
      if (name != kTopName && name != kBottomName) sig.add_concept(name);
    }
    for (const auto& r : j.at("roles")) sig.add_role(r.get<std::string>());
    for (const auto& i : j.at("individuals")) sig.add_individual(i.get<std::string>());

    std::string declared_hash = j.at("signature_hash").get<std::string>();
    if (declared_hash != sig.content_hash()) {
      throw DataError("checkpoint signature hash mismatch (file corrupted or name tables edited)");
    }

    StoreLayout L;
    L.dim = dim;
    L.n_concepts = static_cast<int>(sig.embedded_concepts().size());
    L.n_individuals = static_cast<int>(sig.individuals().size());
    L.n_roles = static_cast<int>(sig.roles().size());
    size_t nd = static_cast<size_t>(dim);

    const auto& blocks = j.at("params");
    std::vector<double> params(L.total());
    auto read_block = [&](const char* key, size_t off, size_t count) {
      std::vector<double> v = decode_doubles(blocks.at(key).get<std::string>(), count);
      std::copy(v.begin(), v.end(), params.begin() + off);
    };
    read_block("concept_lower", L.concept_lower(0), L.n_concepts * nd);
    read_block("concept_delta", L.concept_delta(0), L.n_concepts * nd);
    read_block("individual_point", L.individual_point(0), L.n_individuals * nd);
    read_block("bump", L.bump(0), (L.n_concepts + L.n_individuals) * nd);
    read_block("role_head_lower", L.role_head_lower(0), L.n_roles * nd);
    read_block("role_head_delta", L.role_head_delta(0), L.n_roles * nd);
    read_block("role_tail_lower", L.role_tail_lower(0), L.n_roles * nd);
    read_block("role_tail_delta", L.role_tail_delta(0), L.n_roles * nd);

    return EmbeddingStore::from_parts(std::move(sig), dim, seed, mode, std::move(params));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const EmbeddingStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << checkpoint_to_string(store);
  if (!out) throw DataError("failed to write checkpoint '" + path + "'");
}

EmbeddingStore load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_string(ss.str());
}

}  // namespace box2el
