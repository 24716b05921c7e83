#include "majority/strategy.hpp"

#include <queue>
#include <sstream>

#include "majority/errors.hpp"

namespace majority {

std::string Transcript::to_text() const
{
    std::ostringstream out;
    for (const auto& [e, a] : steps) {
        out << "QUERY " << e.u << ' ' << e.v << " -> " << to_string(a) << '\n';
    }
    if (outcome.has_majority()) {
        out << "OUTCOME MAJORITY " << *outcome.vertex << '\n';
    } else {
        out << "OUTCOME NONE\n";
    }
    return out.str();
}

Transcript Transcript::parse(std::string_view text)
{
    Transcript t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool done = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (done) {
            throw InvalidInput("text after OUTCOME line");
        }
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "QUERY") {
            int u = 0;
            int v = 0;
            std::string arrow;
            std::string ans;
            if (!(ls >> u >> v >> arrow >> ans) || arrow != "->" || (ans != "SAME" && ans != "DIFF")) {
                throw InvalidInput("bad transcript line: " + line);
            }
            t.steps.emplace_back(Edge(u, v), ans == "SAME" ? Answer::Same : Answer::Diff);
        } else if (word == "OUTCOME") {
            std::string kind;
            ls >> kind;
            if (kind == "NONE") {
                t.outcome = Outcome::none();
            } else if (int v = 0; kind == "MAJORITY" && (ls >> v)) {
                t.outcome = Outcome::majority(v);
            } else {
                throw InvalidInput("bad outcome line: " + line);
            }
            done = true;
        } else {
            throw InvalidInput("bad transcript line: " + line);
        }
    }
    if (!done) {
        throw InvalidInput("transcript has no OUTCOME line");
    }
    return t;
}

Transcript play(const Graph& g, Querier& querier, Adversary& adversary)
{
    QueryState state(std::make_shared<const Graph>(g));
    Transcript t;
    while (true) {
        if (auto out = terminal_outcome(state)) {
            t.outcome = *out;
            return t;
        }
        const Edge e = querier.next_query(state);
        if (!state.graph().has_edge(e.u, e.v) || state.same_component(e.u, e.v)) {
            throw IllegalQuery("querier " + querier.name() + " proposed illegal pair " + std::to_string(e.u) + " " +
                               std::to_string(e.v));
        }
        const Answer a = adversary.answer(state, e);
        state = apply_query(state, e, a);
        t.steps.emplace_back(e, a);
    }
}

bool replay_valid(const Graph& g, const Transcript& t)
{
    QueryState state(std::make_shared<const Graph>(g));
    try {
        for (const auto& [e, a] : t.steps) {
            if (terminal_outcome(state)) {
                return false;
            }
            state = apply_query(state, e, a);
        }
    } catch (const IllegalQuery&) {
        return false;
    }
    const auto out = terminal_outcome(state);
    return out && *out == t.outcome;
}

SpanningTreeQuerier::SpanningTreeQuerier(const Graph& g)
{
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[s]) {
            continue;
        }
        seen[s] = 1;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            const Vertex x = q.front();
            q.pop();
            for (Vertex y : g.neighbors(x)) {
                if (!seen[y]) {
                    seen[y] = 1;
                    order_.emplace_back(x, y);
                    q.push(y);
                }
            }
        }
    }
}

Edge SpanningTreeQuerier::next_query(const QueryState& state)
{
    for (const Edge& e : order_) {
        if (!state.same_component(e.u, e.v)) {
            return e;
        }
    }
    throw IllegalQuery("spanning querier has no edge left");
}

Edge RandomQuerier::next_query(const QueryState& state)
{
    const auto legal = state.legal_queries();
    if (legal.empty()) throw IllegalQuery("no legal query at this state");
    return legal[static_cast<std::size_t>(rng_() % legal.size())];
}

}  // namespace majority
