#ifndef SHAC_TRIAL_LOG_HPP
#define SHAC_TRIAL_LOG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "shac/search_space.hpp"

namespace shac {

struct TrialRecord {
    std::int64_t trial = 0;
    std::int64_t batch = 0;
    Point point;
    double value = 0.0;
    std::int64_t attempts = 1;
    int cascade_size = 0;
};

struct AdoptionEvent {
    std::int64_t batch = 0;
    int cascade_size = 0;
    std::optional<double> cv_accuracy;
};

/// Append-only record of a run: one entry per trial plus adoption events.
class TrialLog {
public:
    void append_trial(TrialRecord record);
    void append_adoption(AdoptionEvent event);

    const std::vector<TrialRecord>& records() const { return records_; }
    const std::vector<AdoptionEvent>& adoptions() const { return adoptions_; }
    std::size_t size() const { return records_.size(); }

private:
    std::vector<TrialRecord> records_;
    std::vector<AdoptionEvent> adoptions_;
};

/// Streams the log as JSON lines, one object per trial
///   {"trial":0,"batch":0,"point":[...],"value":...,"attempts":1,"cascade_size":0}
/// with adoption events interleaved after their batch:
///   {"event":"adopt","batch":1,"cascade_size":1,"cv_accuracy":0.6}
void write_jsonl(const TrialLog& log, std::ostream& out);

/// Parses a stream produced by write_jsonl.
TrialLog read_jsonl(std::istream& in);

} // namespace shac

#endif // SHAC_TRIAL_LOG_HPP
