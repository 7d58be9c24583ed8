#include "aqmsim/engine.hpp"

#include <stdexcept>
#include <string>

namespace aqmsim {

EventHandle Engine::schedule(SimTime at, std::function<void()> action) {
    if (at < now_) {
        throw std::logic_error("Engine::schedule: event at t=" + at.to_string() +
                               " is in the past (now=" + now_.to_string() + ")");
    }
    EventHandle h = next_seq_++;
    calendar_.emplace(Key{at, h}, std::move(action));
    pending_.emplace(h, at);
    ++scheduled_;
    return h;
}

void Engine::cancel(EventHandle h) {
    auto it = pending_.find(h);
    if (it == pending_.end()) return;
    calendar_.erase(Key{it->second, h});
    pending_.erase(it);
    ++cancelled_;
}

RunSummary Engine::run_until(SimTime t_end) {
    RunSummary summary;
    while (!calendar_.empty()) {
        auto first = calendar_.begin();
        if (first->first.first > t_end) break;
        now_ = first->first.first;
        auto action = std::move(first->second);
        pending_.erase(first->first.second);
        calendar_.erase(first);
        ++executed_;
        ++summary.events_executed;
        action();
    }
    if (t_end > now_) now_ = t_end;
    summary.final_time = now_;
    return summary;
}

}  // namespace aqmsim
