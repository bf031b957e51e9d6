#ifndef PSUB_BATCH_HPP
#define PSUB_BATCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "groupfile.hpp"
#include "report.hpp"

namespace psub
{

inline constexpr char const *kCsvVersion = "# psub batch report v1";

inline constexpr char const *kCsvHeader =
  "name,order,p,p_part,sp_size,ap_size,sp_core,ap_core,same_type,op_order,"
  "sp_contractible,ap_contractible,ap_steps,sp_height,ap_height,"
  "pred0,pred1,pred2,pred3,propA,ap_retract,propB,sp_euler,ap_euler,"
  "sp_homology,ap_homology,candidate,status,reject";

struct BatchOptions
{
  /// Empty means every prime divisor of |G|.
  std::vector<unsigned> primes;
  unsigned jobs = 1;
  double timeout_seconds = 120.0;
  std::size_t max_order = kDefaultMaxOrder;
  AnalyzeOptions analyze;
};

struct BatchRow
{
  std::string name;
  std::string file;
  unsigned p = 0;
  std::size_t order = 0;
  /// ok, timeout, error or rejected.
  std::string status;
  std::string reject;
  std::optional<HomotopyReport> report;
};

struct BatchResult
{
  std::vector<BatchRow> rows;

  std::size_t count(std::string const &status) const
  {
    return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [&](BatchRow const &r) { return r.status == status; }));
  }

  std::size_t candidates() const
  {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](auto const &r) {
      return r.report && !r.report->candidate().empty();
    }));
  }
};

namespace detail
{

struct BatchJob
{
  std::shared_ptr<Group const> group;
  std::size_t row;
};

inline std::string csv_escape(std::string const &s)
{
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

} // namespace detail

/// Every `.grp` file directly inside dir, in path order.
inline std::vector<std::filesystem::path> list_group_files(std::filesystem::path const &dir)
{
  std::vector<std::filesystem::path> files;
  for (auto const &entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".grp")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

/// Analyze every (group, prime) of the given files. Rows come back sorted
/// by (name, p, file) whatever the worker count; a file that fails to
/// parse or close yields a single rejected row.
inline BatchResult run_batch(std::vector<std::filesystem::path> const &files,
                             BatchOptions const &opt)
{
  BatchResult result;
  std::vector<detail::BatchJob> jobs;

  for (auto const &path : files) {
    BatchRow base;
    base.file = path.filename().string();
    base.name = path.stem().string();
    std::shared_ptr<Group const> G;
    try {
      GroupFile gf = load_group_file(path);
      base.name = gf.name;
      G = std::make_shared<Group const>(gf.to_group(opt.max_order));
    } catch (std::exception const &e) {
      base.status = "rejected";
      base.reject = e.what();
      result.rows.push_back(std::move(base));
      continue;
    }
    base.order = G->order();
    std::vector<unsigned> primes = prime_divisors(G->order());
    if (!opt.primes.empty()) {
      std::vector<unsigned> chosen;
      for (unsigned q : opt.primes)
        if (std::find(primes.begin(), primes.end(), q) != primes.end())
          chosen.push_back(q);
      primes = std::move(chosen);
    }
    for (unsigned q : primes) {
      BatchRow row = base;
      row.p = q;
      jobs.push_back({G, result.rows.size()});
      result.rows.push_back(std::move(row));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t j = next.fetch_add(1);
      if (j >= jobs.size())
        return;
      BatchRow &row = result.rows[jobs[j].row];
      try {
        ScopedDeadline deadline{std::chrono::duration<double>(opt.timeout_seconds)};
        row.report = analyze(*jobs[j].group, row.name, row.p, opt.analyze);
        row.status = "ok";
      } catch (Timeout const &) {
        row.status = "timeout";
      } catch (std::exception const &e) {
        row.status = "error";
        row.reject = e.what();
      }
    }
  };
  unsigned const n_workers = std::max(1u, std::min<unsigned>(
                                            opt.jobs, static_cast<unsigned>(jobs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](BatchRow const &a, BatchRow const &b) {
                     if (a.name != b.name)
                       return a.name < b.name;
                     if (a.p != b.p)
                       return a.p < b.p;
                     return a.file < b.file;
                   });
  return result;
}

inline BatchResult run_batch(std::filesystem::path const &dir, BatchOptions const &opt)
{
  return run_batch(list_group_files(dir), opt);
}

inline void write_csv_row(std::ostream &os, BatchRow const &row)
{
  using detail::yes_no;
  std::vector<std::string> f;
  f.push_back(row.name);
  f.push_back(row.order ? std::to_string(row.order) : "");
  f.push_back(row.p ? std::to_string(row.p) : "");
  if (auto const &r = row.report) {
    auto opt_bool = [](std::optional<bool> b) { return b ? yes_no(*b) : std::string(); };
    f.push_back(std::to_string(r->p_part));
    f.push_back(std::to_string(r->sp_size));
    f.push_back(std::to_string(r->ap_size));
    f.push_back(std::to_string(r->sp_core));
    f.push_back(std::to_string(r->ap_core));
    f.push_back(yes_no(r->same_type));
    f.push_back(std::to_string(r->op_order));
    f.push_back(yes_no(r->sp_contractible));
    f.push_back(yes_no(r->ap_contractible));
    f.push_back(!r->steps_computed ? ""
                : r->ap_steps      ? std::to_string(*r->ap_steps)
                                   : "none");
    f.push_back(std::to_string(r->sp_height));
    f.push_back(std::to_string(r->ap_height));
    for (auto const &pred : r->predicates)
      f.push_back(opt_bool(pred));
    f.push_back(r->propA.case_hit ? std::to_string(*r->propA.case_hit) : "none");
    f.push_back(yes_no(r->propA.retract));
    f.push_back(r->propB ? std::to_string(*r->propB) : "none");
    f.push_back(std::to_string(r->sp_euler));
    f.push_back(std::to_string(r->ap_euler));
    f.push_back(r->sp_homology ? r->sp_homology->serialize() : "");
    f.push_back(r->ap_homology ? r->ap_homology->serialize() : "");
    f.push_back(r->candidate());
  } else {
    f.resize(f.size() + 24);
  }
  f.push_back(row.status);
  f.push_back(row.reject);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i)
      os << ',';
    os << detail::csv_escape(f[i]);
  }
  os << '\n';
}

inline void write_csv(std::ostream &os, BatchResult const &result)
{
  os << kCsvVersion << '\n' << kCsvHeader << '\n';
  for (auto const &row : result.rows)
    write_csv_row(os, row);
}

inline std::string to_csv(BatchResult const &result)
{
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

} // namespace psub

#endif // PSUB_BATCH_HPP
