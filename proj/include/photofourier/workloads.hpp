#ifndef PHOTOFOURIER_WORKLOADS_HPP
#define PHOTOFOURIER_WORKLOADS_HPP

// CNN workload descriptions: a JSON schema for conv-layer stacks and the
// built-in layer tables for the benchmarked networks (conv layers only;
// pooling shows up as in_size transitions between entries).

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "photofourier/errors.hpp"

namespace photofourier::workloads {

enum class Padding { Same, Valid };

struct LayerSpec {
  std::size_t in_size = 0;      // S_i
  std::size_t kernel = 0;       // S_k
  std::size_t stride = 1;
  std::size_t in_channels = 1;  // C_in
  std::size_t out_channels = 1; // C_out
  Padding padding = Padding::Same;

  std::size_t out_size() const { return (in_size + stride - 1) / stride; }
  std::uint64_t macs() const {
    return static_cast<std::uint64_t>(out_size()) * out_size() * kernel * kernel * in_channels *
           out_channels;
  }
  bool operator==(const LayerSpec&) const = default;
};

struct NetworkSpec {
  std::string name;
  bool chained = false;  // when true, out_channels must feed the next layer
  std::vector<LayerSpec> layers;

  std::uint64_t total_macs() const {
    std::uint64_t t = 0;
    for (const auto& l : layers) t += l.macs();
    return t;
  }
  bool operator==(const NetworkSpec&) const = default;
};

inline void validate_network(const NetworkSpec& net) {
  if (net.layers.empty()) throw ValidationError("network has no layers");
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec& l = net.layers[i];
    const std::string where = "layer " + std::to_string(i);
    if (l.in_size < 1 || l.kernel < 1 || l.in_channels < 1 || l.out_channels < 1)
      throw ValidationError(where + ": sizes and channel counts must be positive");
    if (l.stride < 1) throw ValidationError(where + ": stride must be >= 1");
    if (l.kernel > l.in_size) throw ValidationError(where + ": kernel larger than input");
    if (net.chained && i + 1 < net.layers.size() &&
        l.out_channels != net.layers[i + 1].in_channels)
      throw ValidationError(where + ": out_channels does not feed the next layer");
  }
}

inline NetworkSpec parse_network(const std::string& doc) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("network document: ") + e.what());
  }
  NetworkSpec net;
  try {
    net.name = j.at("name").get<std::string>();
    net.chained = j.value("chained", false);
    for (const auto& lj : j.at("layers")) {
      LayerSpec l;
      l.in_size = lj.at("in_size").get<std::size_t>();
      l.kernel = lj.at("kernel").get<std::size_t>();
      l.stride = lj.at("stride").get<std::size_t>();
      l.in_channels = lj.at("in_channels").get<std::size_t>();
      l.out_channels = lj.at("out_channels").get<std::size_t>();
      const std::string pad = lj.value("padding", "same");
      if (pad == "same")
        l.padding = Padding::Same;
      else if (pad == "valid")
        l.padding = Padding::Valid;
      else
        throw ParseError("layer field 'padding' must be 'same' or 'valid'");
      net.layers.push_back(l);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network document: ") + e.what());
  }
  validate_network(net);
  return net;
}

inline std::string serialize_network(const NetworkSpec& net) {
  nlohmann::json j;
  j["name"] = net.name;
  if (net.chained) j["chained"] = true;
  j["layers"] = nlohmann::json::array();
  for (const auto& l : net.layers) {
    nlohmann::json lj;
    lj["in_size"] = l.in_size;
    lj["kernel"] = l.kernel;
    lj["stride"] = l.stride;
    lj["in_channels"] = l.in_channels;
    lj["out_channels"] = l.out_channels;
    lj["padding"] = l.padding == Padding::Same ? "same" : "valid";
    j["layers"].push_back(lj);
  }
  return j.dump(2) + "\n";
}

namespace detail {

inline NetworkSpec make_net(std::string name,
                            std::initializer_list<std::array<std::size_t, 5>> rows) {
  NetworkSpec net;
  net.name = std::move(name);
  for (const auto& r : rows)
    net.layers.push_back(LayerSpec{r[0], r[1], r[2], r[3], r[4], Padding::Same});
  return net;
}

}  // namespace detail

/// Canonical conv-layer tables. "resnet32" is accepted as an alias of the
/// standard 34-layer network (the two names refer to the same table here).
inline NetworkSpec builtin_network(const std::string& name) {
  using detail::make_net;
  if (name == "alexnet")
    return make_net("alexnet", {{224, 11, 4, 3, 64},
                                {27, 5, 1, 64, 192},
                                {13, 3, 1, 192, 384},
                                {13, 3, 1, 384, 256},
                                {13, 3, 1, 256, 256}});
  if (name == "vgg16")
    return make_net(
        "vgg16",
        {{224, 3, 1, 3, 64},   {224, 3, 1, 64, 64},  {112, 3, 1, 64, 128}, {112, 3, 1, 128, 128},
         {56, 3, 1, 128, 256}, {56, 3, 1, 256, 256}, {56, 3, 1, 256, 256}, {28, 3, 1, 256, 512},
         {28, 3, 1, 512, 512}, {28, 3, 1, 512, 512}, {14, 3, 1, 512, 512}, {14, 3, 1, 512, 512},
         {14, 3, 1, 512, 512}});
  if (name == "resnet18")
    return make_net(
        "resnet18",
        {{224, 7, 2, 3, 64},  {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},
         {56, 3, 1, 64, 64},  {56, 3, 2, 64, 128},  {28, 3, 1, 128, 128}, {56, 1, 2, 64, 128},
         {28, 3, 1, 128, 128}, {28, 3, 1, 128, 128}, {28, 3, 2, 128, 256}, {14, 3, 1, 256, 256},
         {28, 1, 2, 128, 256}, {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256}, {14, 3, 2, 256, 512},
         {7, 3, 1, 512, 512},  {14, 1, 2, 256, 512}, {7, 3, 1, 512, 512},  {7, 3, 1, 512, 512}});
  if (name == "resnet34" || name == "resnet32")
    return make_net(
        "resnet34",
        {{224, 7, 2, 3, 64},   {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},
         {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},   {56, 3, 1, 64, 64},   {56, 3, 2, 64, 128},
         {28, 3, 1, 128, 128}, {56, 1, 2, 64, 128},  {28, 3, 1, 128, 128}, {28, 3, 1, 128, 128},
         {28, 3, 1, 128, 128}, {28, 3, 1, 128, 128}, {28, 3, 1, 128, 128}, {28, 3, 1, 128, 128},
         {28, 3, 2, 128, 256}, {14, 3, 1, 256, 256}, {28, 1, 2, 128, 256}, {14, 3, 1, 256, 256},
         {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256},
         {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256}, {14, 3, 1, 256, 256},
         {14, 3, 1, 256, 256}, {14, 3, 2, 256, 512}, {7, 3, 1, 512, 512},  {14, 1, 2, 256, 512},
         {7, 3, 1, 512, 512},  {7, 3, 1, 512, 512},  {7, 3, 1, 512, 512},  {7, 3, 1, 512, 512}});
  if (name == "resnet50")
    return make_net(
        "resnet50",
        {{224, 7, 2, 3, 64},    {56, 1, 1, 64, 64},    {56, 3, 1, 64, 64},
         {56, 1, 1, 64, 256},   {56, 1, 1, 64, 256},   {56, 1, 1, 256, 64},
         {56, 3, 1, 64, 64},    {56, 1, 1, 64, 256},   {56, 1, 1, 256, 64},
         {56, 3, 1, 64, 64},    {56, 1, 1, 64, 256},   {56, 1, 1, 256, 128},
         {56, 3, 2, 128, 128},  {28, 1, 1, 128, 512},  {56, 1, 2, 256, 512},
         {28, 1, 1, 512, 128},  {28, 3, 1, 128, 128},  {28, 1, 1, 128, 512},
         {28, 1, 1, 512, 128},  {28, 3, 1, 128, 128},  {28, 1, 1, 128, 512},
         {28, 1, 1, 512, 128},  {28, 3, 1, 128, 128},  {28, 1, 1, 128, 512},
         {28, 1, 1, 512, 256},  {28, 3, 2, 256, 256},  {14, 1, 1, 256, 1024},
         {28, 1, 2, 512, 1024}, {14, 1, 1, 1024, 256}, {14, 3, 1, 256, 256},
         {14, 1, 1, 256, 1024}, {14, 1, 1, 1024, 256}, {14, 3, 1, 256, 256},
         {14, 1, 1, 256, 1024}, {14, 1, 1, 1024, 256}, {14, 3, 1, 256, 256},
         {14, 1, 1, 256, 1024}, {14, 1, 1, 1024, 256}, {14, 3, 1, 256, 256},
         {14, 1, 1, 256, 1024}, {14, 1, 1, 1024, 256}, {14, 3, 1, 256, 256},
         {14, 1, 1, 256, 1024}, {14, 1, 1, 1024, 512}, {14, 3, 2, 512, 512},
         {7, 1, 1, 512, 2048},  {14, 1, 2, 1024, 2048}, {7, 1, 1, 2048, 512},
         {7, 3, 1, 512, 512},   {7, 1, 1, 512, 2048},  {7, 1, 1, 2048, 512},
         {7, 3, 1, 512, 512},   {7, 1, 1, 512, 2048}});
  throw UnknownNetwork("unknown builtin network: " + name);
}

inline std::vector<std::string> builtin_names() {
  return {"alexnet", "vgg16", "resnet18", "resnet34", "resnet50"};
}

}  // namespace photofourier::workloads

#endif
