#include <array>
#include <fstream>
#include <limits>

#include "json_codec.hpp"
#include "synergy/errors.hpp"
#include "synergy/simulator.hpp"

namespace synergy {

namespace {

constexpr std::uint32_t kTranscriptMagic = 0x52545953u;  // "SYTR" little-endian
constexpr int kTranscriptVersion = 1;
constexpr std::uint64_t kNoInput = std::numeric_limits<std::uint64_t>::max();

template <typename T>
void put(std::ostream& os, T v) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw FormatError("transcript sidecar truncated");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
  return v;
}

Fp get_symbol(std::istream& is) {
  const auto raw = get<std::uint32_t>(is);
  if (raw >= Fp::kModulus) throw FormatError("transcript symbol out of field range");
  return Fp(raw);
}

std::filesystem::path sidecar_for(const std::filesystem::path& json_path) {
  auto p = json_path;
  p.replace_extension(".bin");
  return p;
}

}  // namespace

void save_transcript(const Transcript& transcript, const std::filesystem::path& json_path) {
  const auto bin_path = sidecar_for(json_path);
  const int K = transcript.config().users;

  detail::json meta{{"format", "synergy-transcript"},
                    {"version", kTranscriptVersion},
                    {"modulus", Fp::kModulus},
                    {"seed", transcript.seed},
                    {"plan", detail::plan_json(transcript.plan, false)},
                    {"uses", transcript.uses.size()},
                    {"resampled_uses", transcript.resampled_uses},
                    {"sidecar", bin_path.filename().string()}};
  std::ofstream js(json_path);
  if (!js) throw FormatError("cannot open " + json_path.string() + " for writing");
  js << meta.dump(2) << '\n';

  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw FormatError("cannot open " + bin_path.string() + " for writing");
  put<std::uint32_t>(bin, kTranscriptMagic);
  put<std::uint32_t>(bin, kTranscriptVersion);
  put<std::uint32_t>(bin, static_cast<std::uint32_t>(K));
  put<std::uint64_t>(bin, transcript.uses.size());
  for (const ChannelUse& use : transcript.uses) {
    put<std::uint64_t>(bin, use.t);
    put<std::uint32_t>(bin, static_cast<std::uint32_t>(use.phase));
    put<std::uint64_t>(bin, use.group.rank());
    put<std::uint64_t>(bin, use.slot);
    put<std::uint64_t>(bin, use.latest_input.value_or(kNoInput));
    for (Fp v : use.channel.entries()) put<std::uint32_t>(bin, v.value());
    for (Fp v : use.transmitted) put<std::uint32_t>(bin, v.value());
    for (int k = 1; k <= K; ++k) put<std::uint32_t>(bin, transcript.observations.at(k, use.t).value());
  }
  if (!bin) throw FormatError("write to " + bin_path.string() + " failed");
}

Transcript load_transcript(const std::filesystem::path& json_path) {
  std::ifstream js(json_path);
  if (!js) throw FormatError("cannot open " + json_path.string());
  detail::json meta;
  try {
    meta = detail::json::parse(js);
  } catch (const detail::json::exception& e) {
    throw FormatError(json_path.string() + ": " + e.what());
  }
  if (meta.value("format", "") != "synergy-transcript" || meta.value("version", 0) != kTranscriptVersion) {
    throw FormatError(json_path.string() + " is not a version " + std::to_string(kTranscriptVersion) + " transcript");
  }
  if (meta.at("modulus").get<std::uint32_t>() != Fp::kModulus) throw FormatError("transcript modulus mismatch");

  Transcript transcript;
  const auto& plan = meta.at("plan");
  transcript.plan = plan_phases(detail::config_from_json(plan.at("config")), plan.at("demand").get<std::vector<int>>());
  transcript.seed = meta.at("seed").get<std::uint64_t>();
  transcript.resampled_uses = meta.at("resampled_uses").get<std::uint64_t>();
  const int K = transcript.config().users;
  transcript.observations = ObservationLog(K);

  const auto bin_path = json_path.parent_path() / meta.at("sidecar").get<std::string>();
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw FormatError("cannot open sidecar " + bin_path.string());
  if (get<std::uint32_t>(bin) != kTranscriptMagic) throw FormatError(bin_path.string() + " is not a transcript sidecar");
  if (get<std::uint32_t>(bin) != kTranscriptVersion) throw FormatError("sidecar version mismatch");
  if (get<std::uint32_t>(bin) != static_cast<std::uint32_t>(K)) throw FormatError("sidecar K mismatch");
  const auto count = get<std::uint64_t>(bin);
  if (count != meta.at("uses").get<std::uint64_t>()) throw FormatError("sidecar use count mismatch");

  const auto k = static_cast<std::size_t>(K);
  FieldVector received(k);
  for (std::uint64_t i = 0; i < count; ++i) {
    ChannelUse use;
    use.t = get<std::uint64_t>(bin);
    use.phase = static_cast<int>(get<std::uint32_t>(bin));
    use.group = Subset::unrank(K, use.phase, get<std::uint64_t>(bin));
    use.slot = get<std::uint64_t>(bin);
    if (const auto input = get<std::uint64_t>(bin); input != kNoInput) use.latest_input = input;
    std::vector<Fp> channel(k * k);
    for (auto& v : channel) v = get_symbol(bin);
    use.channel = FieldMatrix(k, k, std::move(channel));
    use.transmitted.resize(k);
    for (auto& v : use.transmitted) v = get_symbol(bin);
    for (auto& v : received) v = get_symbol(bin);
    transcript.observations.append(received);
    transcript.uses.push_back(std::move(use));
  }
  if (bin.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes in transcript sidecar");
  return transcript;
}

}  // namespace synergy
