#include "pdn/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pdn/errors.hpp"

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace pdn {

namespace {

constexpr char kMagic[4] = {'P', 'D', 'N', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) { out.write(reinterpret_cast<const char*>(&x), 4); }

void put_blob(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

struct Reader {
  std::ifstream in;
  std::string path;
  std::uint64_t offset = 0;

  void read(void* dst, std::size_t n) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      throw DataError("checkpoint '" + path + "': truncated at offset " + std::to_string(offset));
    offset += n;
  }
  std::uint32_t u32() {
    std::uint32_t x;
    read(&x, 4);
    return x;
  }
  std::string blob() {
    const std::uint32_t n = u32();
    std::string s(n, '\0');
    if (n) read(s.data(), n);
    return s;
  }
};

}  // namespace

std::string train_config_to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["model"] = model_kind_to_string(c.model);
  j["word_dim"] = c.word_dim;
  j["pos_dim"] = c.pos_dim;
  j["hidden"] = c.hidden;
  j["pan_hidden"] = c.pan_hidden;
  j["attn_hidden"] = c.attn_hidden;
  j["penultimate"] = c.penultimate;
  j["dropout"] = c.dropout;
  j["batch_size"] = c.batch_size;
  j["epochs"] = c.epochs;
  j["lr"] = c.lr;
  j["max_len"] = c.max_len;
  j["seed"] = c.seed;
  j["decay_kind"] = decay_kind_to_string(c.decay.kind);
  j["decay_lambda"] = c.decay.lambda;
  j["freeze_embeddings"] = c.freeze_embeddings;
  return j.dump();
}

TrainConfig train_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TrainConfig c;
  c.model = model_kind_from_string(j.at("model").get<std::string>());
  c.word_dim = j.at("word_dim").get<int>();
  c.pos_dim = j.at("pos_dim").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.pan_hidden = j.at("pan_hidden").get<int>();
  c.attn_hidden = j.at("attn_hidden").get<int>();
  c.penultimate = j.at("penultimate").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.batch_size = j.at("batch_size").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.lr = j.at("lr").get<double>();
  c.max_len = j.at("max_len").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.decay.kind = decay_kind_from_string(j.at("decay_kind").get<std::string>());
  c.decay.lambda = j.at("decay_lambda").get<double>();
  c.freeze_embeddings = j.at("freeze_embeddings").get<bool>();
  return c;
}

void save_checkpoint(const SentimentModel& model, const TrainConfig& config, const Vocab& vocab,
                     const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp + "'");
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_blob(out, train_config_to_json(config));
    put_blob(out, vocab.to_lines());
    put_u32(out, static_cast<std::uint32_t>(model.params().count()));
    std::vector<float> buf;
    for (const Param& p : model.params()) {
      put_blob(out, p.name);
      put_u32(out, static_cast<std::uint32_t>(p.value.rank()));
      for (int d : p.value.dims) put_u32(out, static_cast<std::uint32_t>(d));
      buf.resize(p.value.v.size());
      for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(p.value.v[i]);
      out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 4));
    }
    if (!out) {
      std::remove(tmp.c_str());
      throw DataError("failed while writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw DataError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
  }
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  Reader r;
  r.path = path;
  r.in.open(path, std::ios::binary);
  if (!r.in) throw DataError("cannot open checkpoint '" + path + "'");

  char magic[4];
  r.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw DataError("checkpoint '" + path + "': bad magic at offset 0");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw DataError("checkpoint '" + path + "': unsupported version " + std::to_string(version) + " at offset 4");

  const TrainConfig config = train_config_from_json(r.blob());
  const Vocab vocab = Vocab::from_lines(r.blob());

  SentimentModel model(config.model, config.dims_for_vocab(vocab.size()), config.decay, config.dropout);
  model.freeze_embeddings = config.freeze_embeddings;

  const std::uint32_t tensor_count = r.u32();
  if (tensor_count != model.params().count())
    throw DataError("checkpoint '" + path + "': expected " + std::to_string(model.params().count()) +
                    " tensors, found " + std::to_string(tensor_count));
  std::vector<float> buf;
  for (std::uint32_t k = 0; k < tensor_count; ++k) {
    const std::uint64_t tensor_offset = r.offset;
    const std::string name = r.blob();
    if (!model.params().has(name))
      throw DataError("checkpoint '" + path + "': unknown tensor '" + name + "' at offset " +
                      std::to_string(tensor_offset));
    Param& p = model.params().get(name);
    const std::uint32_t rank = r.u32();
    std::vector<int> dims;
    for (std::uint32_t i = 0; i < rank; ++i) dims.push_back(static_cast<int>(r.u32()));
    if (dims != p.value.dims)
      throw DataError("checkpoint '" + path + "': tensor '" + name + "' has shape " + dims_to_string(dims) +
                      ", expected " + dims_to_string(p.value.dims) + " (offset " + std::to_string(tensor_offset) +
                      ")");
    buf.resize(p.value.v.size());
    r.read(buf.data(), buf.size() * 4);
    for (std::size_t i = 0; i < buf.size(); ++i) p.value.v[i] = static_cast<double>(buf[i]);
  }
  return LoadedCheckpoint{std::move(model), config, vocab};
}

}  // namespace pdn
