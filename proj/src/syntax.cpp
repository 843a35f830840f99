#include "truecon/syntax.hpp"

#include <sstream>

#include "cursor.hpp"

namespace truecon {

namespace detail {
ActionSet parse_actlist(Cursor& c);
ProofTerm parse_pterm(Cursor& c);
}  // namespace detail

static Process make(ProcessNode n) {
    return std::make_shared<const ProcessNode>(std::move(n));
}

Process proc_nil() {
    static Process nil = make({.kind = ProcKind::Nil});
    return nil;
}
Process proc_prefix(Action a, bool executed, ProofTerm deco, Process cont) {
    return make({.kind = ProcKind::Prefix,
                 .action = std::move(a),
                 .executed = executed,
                 .decoration = std::move(deco),
                 .cont = std::move(cont)});
}
Process proc_choice(Process l, Process r) {
    return make({.kind = ProcKind::Choice, .left = std::move(l), .right = std::move(r)});
}
Process proc_parallel(Process l, Process r, ActionSet sync) {
    return make({.kind = ProcKind::Parallel,
                 .left = std::move(l),
                 .right = std::move(r),
                 .sync = std::move(sync)});
}

int proc_compare(const Process& a, const Process& b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case ProcKind::Nil:
            return 0;
        case ProcKind::Prefix:
            if (int c = a->action.compare(b->action)) return c;
            if (a->executed != b->executed) return a->executed ? 1 : -1;
            if (int c = pt_compare(a->decoration, b->decoration)) return c;
            return proc_compare(a->cont, b->cont);
        case ProcKind::Choice:
            if (int c = proc_compare(a->left, b->left)) return c;
            return proc_compare(a->right, b->right);
        case ProcKind::Parallel:
            if (a->sync != b->sync) return a->sync < b->sync ? -1 : 1;
            if (int c = proc_compare(a->left, b->left)) return c;
            return proc_compare(a->right, b->right);
    }
    return 0;
}

bool proc_equal(const Process& a, const Process& b) { return proc_compare(a, b) == 0; }

// Printing precedence: prefix > parallel > choice; chains associate left.
static void print(const Process& p, std::ostringstream& os) {
    auto paren = [&](const Process& q, bool needed) {
        if (needed) os << '(';
        print(q, os);
        if (needed) os << ')';
    };
    switch (p->kind) {
        case ProcKind::Nil:
            os << '0';
            break;
        case ProcKind::Prefix:
            os << p->action;
            if (p->executed) {
                os << '!';
                if (p->decoration) os << to_string(p->decoration);
            }
            os << '.';
            paren(p->cont,
                  p->cont->kind == ProcKind::Choice || p->cont->kind == ProcKind::Parallel);
            break;
        case ProcKind::Parallel:
            paren(p->left, p->left->kind == ProcKind::Choice);
            os << " |[" << sync_to_string(p->sync) << "]| ";
            paren(p->right, p->right->kind == ProcKind::Choice ||
                                p->right->kind == ProcKind::Parallel);
            break;
        case ProcKind::Choice:
            print(p->left, os);
            os << " + ";
            paren(p->right, p->right->kind == ProcKind::Choice);
            break;
    }
}

std::string print_process(const Process& p) {
    std::ostringstream os;
    print(p, os);
    return os.str();
}

namespace {

using detail::Cursor;

Process parse_proc(Cursor& c);

Process parse_pre(Cursor& c) {
    if (c.try_consume("(")) {
        Process p = parse_proc(c);
        c.expect(")");
        return p;
    }
    if (c.try_keyword("0")) return proc_nil();
    Action a = c.ident();
    bool executed = false;
    ProofTerm deco;
    if (c.try_consume("!")) {
        executed = true;
        if (c.peek() == '<') {
            c.expect("<");
            ProofTerm l = detail::parse_pterm(c);
            c.expect(",");
            ProofTerm r = detail::parse_pterm(c);
            c.expect(">");
            c.expect("[");
            ActionSet sync = detail::parse_actlist(c);
            c.expect("]");
            deco = pt_syn(std::move(l), std::move(r), std::move(sync));
        }
    }
    c.expect(".");
    return proc_prefix(std::move(a), executed, std::move(deco), parse_pre(c));
}

Process parse_par(Cursor& c) {
    Process p = parse_pre(c);
    while (c.try_consume("|[")) {
        ActionSet sync = detail::parse_actlist(c);
        c.expect("]|");
        p = proc_parallel(std::move(p), parse_pre(c), std::move(sync));
    }
    return p;
}

Process parse_proc(Cursor& c) {
    Process p = parse_par(c);
    while (c.try_consume("+")) p = proc_choice(std::move(p), parse_par(c));
    return p;
}

}  // namespace

Process parse_process(const std::string& text) {
    detail::Cursor c(text);
    Process p = parse_proc(c);
    c.expect_eof();
    return p;
}

bool is_initial(const Process& p) {
    switch (p->kind) {
        case ProcKind::Nil:
            return true;
        case ProcKind::Prefix:
            return !p->executed && is_initial(p->cont);
        case ProcKind::Choice:
        case ProcKind::Parallel:
            return is_initial(p->left) && is_initial(p->right);
    }
    return true;
}

bool is_well_formed(const Process& p) {
    switch (p->kind) {
        case ProcKind::Nil:
            return true;
        case ProcKind::Prefix:
            return p->executed ? is_well_formed(p->cont) : is_initial(p->cont);
        case ProcKind::Choice:
            return is_well_formed(p->left) && is_well_formed(p->right) &&
                   (is_initial(p->left) || is_initial(p->right));
        case ProcKind::Parallel:
            return is_well_formed(p->left) && is_well_formed(p->right);
    }
    return true;
}

Process to_initial(const Process& p) {
    switch (p->kind) {
        case ProcKind::Nil:
            return p;
        case ProcKind::Prefix:
            if (!p->executed && !p->decoration) {
                Process c = to_initial(p->cont);
                return c == p->cont ? p : proc_prefix(p->action, false, nullptr, c);
            }
            return proc_prefix(p->action, false, nullptr, to_initial(p->cont));
        case ProcKind::Choice: {
            Process l = to_initial(p->left), r = to_initial(p->right);
            return (l == p->left && r == p->right) ? p : proc_choice(l, r);
        }
        case ProcKind::Parallel: {
            Process l = to_initial(p->left), r = to_initial(p->right);
            return (l == p->left && r == p->right) ? p : proc_parallel(l, r, p->sync);
        }
    }
    return p;
}

static void collect_executed(const Process& p, OccurrencePath& path,
                             std::vector<std::pair<OccurrencePath, Process>>& out) {
    switch (p->kind) {
        case ProcKind::Nil:
            break;
        case ProcKind::Prefix:
            if (p->executed) out.emplace_back(path, p);
            path.push_back({.kind = StepKind::IntoPrefix, .action = p->action});
            collect_executed(p->cont, path, out);
            path.pop_back();
            break;
        case ProcKind::Choice:
            path.push_back({.kind = StepKind::ChoiceLeft});
            collect_executed(p->left, path, out);
            path.back() = {.kind = StepKind::ChoiceRight};
            collect_executed(p->right, path, out);
            path.pop_back();
            break;
        case ProcKind::Parallel:
            path.push_back({.kind = StepKind::ParLeft, .sync = p->sync});
            collect_executed(p->left, path, out);
            path.back() = {.kind = StepKind::ParRight, .sync = p->sync};
            collect_executed(p->right, path, out);
            path.pop_back();
            break;
    }
}

std::vector<std::pair<OccurrencePath, Process>> executed_occurrences(const Process& p) {
    std::vector<std::pair<OccurrencePath, Process>> out;
    OccurrencePath path;
    collect_executed(p, path, out);
    return out;
}

static void collect_actions(const Process& p, ActionSet& out) {
    switch (p->kind) {
        case ProcKind::Nil:
            break;
        case ProcKind::Prefix:
            out.insert(p->action);
            collect_actions(p->cont, out);
            break;
        case ProcKind::Choice:
        case ProcKind::Parallel:
            collect_actions(p->left, out);
            collect_actions(p->right, out);
            break;
    }
}

ActionSet actions_of(const Process& p) {
    ActionSet out;
    collect_actions(p, out);
    return out;
}

}  // namespace truecon
