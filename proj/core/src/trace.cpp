#include "stochopt/core/trace.hpp"

#include <charconv>
#include <ostream>

#include "stochopt/version.hpp"

namespace stochopt {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string config_digest(const std::string& canonical_config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

void Trace::write_csv(std::ostream& os) const {
  os << "# stochopt " << kVersion << " config=" << config_digest_;
  if (!run_id_.empty()) os << " run=" << run_id_;
  os << "\n";
  os << "k,adp,alpha,batch_size,fval,gnorm,wall_ns\n";
  for (const TraceRecord& r : records_) {
    os << r.k << ',' << r.adp << ',' << format_double(r.alpha) << ','
       << r.batch_size << ',';
    if (r.fval) os << format_double(*r.fval);
    os << ',';
    if (r.gnorm) os << format_double(*r.gnorm);
    os << ',';
    if (r.wall_ns) os << *r.wall_ns;
    os << '\n';
  }
}

}  // namespace stochopt
