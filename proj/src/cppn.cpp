#include <cmath>
#include <stdexcept>

#include "massqd/encodings.hpp"

namespace massqd {

namespace {

constexpr int kInputs = 3;  // x, y, bias

double scaled(int index, int extent) {
  return extent > 1 ? -1.0 + 2.0 * index / (extent - 1) : 0.0;
}

int quantize(double out, const std::array<double, 3>& thresholds) {
  int level = 0;
  for (double t : thresholds) {
    if (out >= t) ++level;
  }
  return level;
}

}  // namespace

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Gaussian:
      return std::exp(-z * z);
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::Sine:
      return std::sin(z);
    case Activation::Cosine:
      return std::cos(z);
    case Activation::Zero:
      return 0.0;
    case Activation::One:
      return 1.0;
    case Activation::Step:
      return z > 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

std::size_t cppn_weight_count(int hidden_layers, int neurons) {
  const auto n = static_cast<std::size_t>(neurons);
  return kInputs * n + static_cast<std::size_t>(hidden_layers - 1) * n * n + n;
}

CppnGenome random_cppn(int hidden_layers, int neurons, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, kActivationCount - 1);
  CppnGenome g{hidden_layers, neurons, {}, {}};
  g.weights.resize(cppn_weight_count(hidden_layers, neurons));
  for (auto& w : g.weights) w = normal(rng);
  g.activations.resize(static_cast<std::size_t>(hidden_layers * neurons));
  for (auto& a : g.activations) a = static_cast<Activation>(pick(rng));
  return g;
}

// Weight layout: first hidden layer (x, y, bias per neuron), then each
// further hidden layer (previous layer per neuron), then the output neuron.
double evaluate_cppn(const CppnGenome& g, double x, double y) {
  const auto n = static_cast<std::size_t>(g.neurons);
  if (g.weights.size() != cppn_weight_count(g.hidden_layers, g.neurons) ||
      g.activations.size() != static_cast<std::size_t>(g.hidden_layers) * n) {
    throw std::invalid_argument("cppn genome does not match its topology");
  }

  std::vector<double> prev = {x, y, 1.0};
  std::vector<double> cur(n);
  const double* w = g.weights.data();
  const Activation* act = g.activations.data();
  for (int layer = 0; layer < g.hidden_layers; ++layer) {
    for (std::size_t j = 0; j < n; ++j) {
      double z = 0.0;
      for (double in : prev) z += *w++ * in;
      cur[j] = activate(*act++, z);
    }
    prev.swap(cur);
    cur.resize(n);
  }
  double z = 0.0;
  for (double in : prev) z += *w++ * in;
  return std::tanh(z);
}

HeightGrid decode_cppn(const CppnGenome& g, GridShape shape,
                       const std::array<double, 3>& thresholds) {
  HeightGrid grid(shape);
  for (int r = 0; r < shape.rows; ++r) {
    const double y = scaled(r, shape.rows);
    for (int c = 0; c < shape.cols; ++c) {
      grid.set(r, c, quantize(evaluate_cppn(g, scaled(c, shape.cols), y), thresholds));
    }
  }
  return grid;
}

CppnGenome mutate_cppn(CppnGenome g, double p_mut, double sigma, Rng& rng) {
  std::bernoulli_distribution hit(p_mut);
  std::normal_distribution<double> normal(0.0, sigma);
  std::uniform_int_distribution<int> pick(0, kActivationCount - 1);
  for (auto& w : g.weights) {
    if (hit(rng)) w += normal(rng);
  }
  for (auto& a : g.activations) {
    if (hit(rng)) a = static_cast<Activation>(pick(rng));
  }
  return g;
}

}  // namespace massqd
