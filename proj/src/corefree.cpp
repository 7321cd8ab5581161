#include "earring/corefree.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace earring {

  ConjugationCertificate witness_conjugator(GraphOracle const&      g,
                                            std::span<Letter const> w,
                                            bool keep_trace) {
    if (reduce(w).empty()) {
      throw std::invalid_argument("word reduces to the identity: "
                                  + format_word(w));
    }
    // The index of w itself, not of its reduction: w_j may be unreduced.
    Index const j    = index_of(w);
    ReducedWord beta = anchor(j);

    Word gamma = concat(beta.letters(), w);
    Word back  = invert(beta.letters());
    gamma.insert(gamma.end(), back.begin(), back.end());

    auto trace = lift_word(g, gamma, g.base());
    Vertex midpoint
        = beta.empty() ? trace.start : trace.steps[beta.size() - 1].at;
    Vertex end    = trace.endpoint;
    bool   verdict = !end.is_base();

    ConjugationCertificate cert{Word(w.begin(), w.end()),
                                j,
                                std::move(beta),
                                std::move(midpoint),
                                std::move(end),
                                verdict,
                                std::nullopt};
    if (keep_trace) {
      cert.trace = std::move(trace);
    }
    return cert;
  }

  std::size_t MidpointReport::agreeing() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](MidpointStep const& s) {
          return s.at == s.expected;
        }));
  }

  bool MidpointReport::stays_in_island() const noexcept {
    return std::all_of(steps.begin(), steps.end(), [](MidpointStep const& s) {
      return s.in_island;
    });
  }

  bool MidpointReport::ok() const noexcept {
    return starts_at_anchor && agreeing() == steps.size() && stays_in_island();
  }

  MidpointReport midpoint_structure_check(GraphOracle const&            g,
                                          ConjugationCertificate const& cert) {
    auto const isl = g.island_data(cert.j);
    MidpointReport report{cert.j, cert.midpoint.word() == isl->anchor, {}};

    Vertex at = cert.midpoint;
    for (std::size_t i = 0; i < cert.w.size(); ++i) {
      Letter const x    = cert.w[i];
      auto         move = g.neighbor(at, x);
      ReducedWord  expected
          = x.index() <= isl->level ? isl->z_path[i + 1] : at.word();
      bool const inside = g.island_of(move.to.word()) == cert.j;
      report.steps.push_back(
          MidpointStep{x, move.kind, move.to.word(), std::move(expected), inside});
      at = std::move(move.to);
    }
    return report;
  }

  std::size_t ScanReport::in_K_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](auto const& e) { return e.w_in_K; }));
  }

  std::size_t ScanReport::out_of_K_count() const noexcept {
    return entries.size() - in_K_count();
  }

  bool ScanReport::ok() const noexcept {
    return failures.empty();
  }

  ScanReport core_free_scan(GraphOracle const& g,
                            std::uint64_t      max_weight,
                            unsigned           threads) {
    if (max_weight < 2) {
      throw std::invalid_argument("max_weight must be >= 2");
    }
    Index const total = count_up_to_weight(max_weight);
    ScanReport  report{max_weight, total, 0, {}, {}};

    std::vector<std::optional<ScanEntry>> slots(total);
    std::atomic<Index>                    next{0};
    std::exception_ptr                    error;
    std::mutex                            error_mutex;
    auto work = [&] {
      try {
        for (Index k = next++; k < total; k = next++) {
          Index const j = k + 1;
          Word        w = enumerate(j);
          if (reduce(w).empty()) {
            continue;
          }
          auto cert = witness_conjugator(g, w);
          slots[k]  = ScanEntry{j,
                               w,
                               in_K(g, w),
                               cert.verdict,
                               cert.beta.size(),
                               cert.conjugate_endpoint.word()};
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next = total;
      }
    };

    if (threads == 0) {
      threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<Index>(threads, std::max<Index>(total, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
      pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }

    for (auto& slot : slots) {
      if (!slot) {
        ++report.trivial_skipped;
        continue;
      }
      if (!slot->verdict) {
        report.failures.push_back(slot->j);
      }
      report.entries.push_back(std::move(*slot));
    }
    return report;
  }

}  // namespace earring
