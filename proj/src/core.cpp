#include "ivt/core.hpp"

namespace ivt {

const char* mode_name(WeightMode mode) {
  return mode == WeightMode::Classical ? "classical" : "interpolated";
}

Rational quantize_weight(const Rational& d, unsigned bits) {
  if (d < Rational(0) || Rational(1) < d) throw InvalidWeight(d.str());
  if (d.is_zero() || d == Rational(1)) return d;
  const Rational scaled =
      d.scaled_pow2(static_cast<long>(bits)) + Rational(1) / Rational(2);
  BigInt floor;
  mpz_fdiv_q(floor.get_mpz_t(), scaled.raw().get_num_mpz_t(),
             scaled.raw().get_den_mpz_t());
  return Rational(floor).scaled_pow2(-static_cast<long>(bits));
}

AnyTrace run_backend(const ScalarBackend& backend,
                     const ProblemConfig<Rational>& exact_config,
                     const FunctionExpr& f) {
  validate(exact_config);
  if (backend.kind == BackendKind::Exact) return run(exact_config, f);
  if (backend.float_bits == 64) {
    return run(convert_config<double>(exact_config), f);
  }
  if (backend.float_bits == 32) {
    return run(convert_config<float>(exact_config), f);
  }
  throw InvalidConfig("float backend supports 32 or 64 bits, got " +
                      std::to_string(backend.float_bits));
}

ScalarBackend backend_of(const AnyTrace& trace) {
  return std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t.limit_estimate)>;
        return ScalarBackend{ScalarTraits<T>::kind,
                             ScalarTraits<T>::float_bits == 0
                                 ? 64
                                 : ScalarTraits<T>::float_bits};
      },
      trace);
}

}  // namespace ivt
