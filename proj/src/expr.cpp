#include "bratteli/expr.hpp"

#include <cctype>

namespace bratteli {

struct EntryExpr::Node {
    enum Kind { k_const, k_var, k_add, k_mul, k_pow, k_fact } kind;
    Int value;              // k_const
    unsigned exponent = 0;  // k_pow
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const EntryExpr::Node>;
using Node = EntryExpr::Node;

NodePtr make_const(Int v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::k_const;
    n->value = std::move(v);
    return n;
}

NodePtr make_node(Node::Kind kind, NodePtr a, NodePtr b = nullptr,
                  unsigned exponent = 0) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    n->exponent = exponent;
    return n;
}

// sum     := product ('+' product)*
// product := postfix ('*' postfix)*
// postfix := atom (('^' uint) | '!')*
// atom    := uint | 'n' | '(' sum ')'
class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorKind::invalid_spec,
                    "expression: " + what + " at position " +
                        std::to_string(pos_ + 1) + " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum() {
        NodePtr e = product();
        while (eat('+')) e = make_node(Node::k_add, e, product());
        return e;
    }

    NodePtr product() {
        NodePtr e = postfix();
        while (eat('*')) e = make_node(Node::k_mul, e, postfix());
        return e;
    }

    NodePtr postfix() {
        NodePtr e = atom();
        for (;;) {
            if (eat('^'))
                e = make_node(Node::k_pow, e, nullptr, exponent());
            else if (eat('!'))
                e = make_node(Node::k_fact, e);
            else
                return e;
        }
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("missing operand");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = sum();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (c == 'n') {
            ++pos_;
            return make_node(Node::k_var, nullptr);
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return make_const(Int(digits()));
        fail("expected number, 'n', or '('");
    }

    std::string digits() {
        skip_ws();
        std::string d;
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
            d += s_[pos_++];
        if (d.empty()) fail("expected digits");
        return d;
    }

    unsigned exponent() {
        std::string d = digits();
        if (d.size() > 6) fail("exponent too large");
        return static_cast<unsigned>(std::stoul(d));
    }
};

Int eval_factorial(const Int& arg) {
    if (arg < 0)
        throw Error(ErrorKind::range,
                    "factorial of negative value " + arg.get_str());
    // digits(k!) >= k for k >= 25, so anything past the digit cap is doomed.
    unsigned long cap = std::max<unsigned long>(max_digits(), 25);
    if (arg > Int(cap))
        throw Error(ErrorKind::resource,
                    "factorial argument " + arg.get_str() + " exceeds digit cap");
    Int out;
    mpz_fac_ui(out.get_mpz_t(), arg.get_ui());
    guard_size(out);
    return out;
}

Int eval_node(const Node* n, const Int& x) {
    switch (n->kind) {
    case Node::k_const: return n->value;
    case Node::k_var: return x;
    case Node::k_add: return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
    case Node::k_mul: {
        Int out = eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
        guard_size(out);
        return out;
    }
    case Node::k_pow: {
        Int base = eval_node(n->a.get(), x);
        std::size_t base_digits = mpz_sizeinbase(base.get_mpz_t(), 10);
        if (n->exponent > 0 && base_digits > max_digits() / n->exponent + 1)
            throw Error(ErrorKind::resource, "power exceeds digit cap");
        Int out;
        mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), n->exponent);
        guard_size(out);
        return out;
    }
    case Node::k_fact: return eval_factorial(eval_node(n->a.get(), x));
    }
    throw Error(ErrorKind::range, "corrupt expression node");
}

// prec 0 = sum, 1 = product, 2 = postfix/atom
void print_node(const Node* n, int parent_prec, std::string& out) {
    switch (n->kind) {
    case Node::k_const:
        out += n->value.get_str();
        return;
    case Node::k_var:
        out += 'n';
        return;
    case Node::k_add: {
        bool wrap = parent_prec > 0;
        if (wrap) out += '(';
        print_node(n->a.get(), 0, out);
        out += '+';
        print_node(n->b.get(), 0, out);
        if (wrap) out += ')';
        return;
    }
    case Node::k_mul: {
        bool wrap = parent_prec > 1;
        if (wrap) out += '(';
        print_node(n->a.get(), 1, out);
        out += '*';
        print_node(n->b.get(), 1, out);
        if (wrap) out += ')';
        return;
    }
    case Node::k_pow:
        print_node(n->a.get(), 2, out);
        out += '^';
        out += std::to_string(n->exponent);
        return;
    case Node::k_fact:
        print_node(n->a.get(), 2, out);
        out += '!';
        return;
    }
}

bool depends_on_var(const Node* n) {
    switch (n->kind) {
    case Node::k_const: return false;
    case Node::k_var: return true;
    case Node::k_add:
    case Node::k_mul:
        return depends_on_var(n->a.get()) || depends_on_var(n->b.get());
    case Node::k_pow:
    case Node::k_fact:
        return depends_on_var(n->a.get());
    }
    return false;
}

bool node_polynomial(const Node* n) {
    switch (n->kind) {
    case Node::k_const:
    case Node::k_var:
        return true;
    case Node::k_add:
    case Node::k_mul:
        return node_polynomial(n->a.get()) && node_polynomial(n->b.get());
    case Node::k_pow:
        return node_polynomial(n->a.get());
    case Node::k_fact:
        return !depends_on_var(n->a.get());
    }
    return false;
}

Poly node_poly(const Node* n) {
    switch (n->kind) {
    case Node::k_const: return Poly::constant(n->value);
    case Node::k_var: return Poly::var();
    case Node::k_add: return node_poly(n->a.get()) + node_poly(n->b.get());
    case Node::k_mul: return node_poly(n->a.get()) * node_poly(n->b.get());
    case Node::k_pow: return node_poly(n->a.get()).pow(n->exponent);
    case Node::k_fact:
        return Poly::constant(eval_factorial(eval_node(n->a.get(), 0)));
    }
    throw Error(ErrorKind::range, "corrupt expression node");
}

}  // namespace

EntryExpr::EntryExpr() : root_(make_const(0)) {}

EntryExpr::EntryExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

EntryExpr EntryExpr::parse(const std::string& text) {
    return EntryExpr(Parser(text).run());
}

EntryExpr EntryExpr::constant(const Int& value) {
    return EntryExpr(make_const(value));
}

Int EntryExpr::eval(const Int& n) const { return eval_node(root_.get(), n); }

std::string EntryExpr::str() const {
    std::string out;
    print_node(root_.get(), 0, out);
    return out;
}

bool EntryExpr::polynomial() const { return node_polynomial(root_.get()); }

Poly EntryExpr::to_poly() const {
    if (!polynomial())
        throw Error(ErrorKind::range,
                    "expression '" + str() + "' is not polynomial in n");
    return node_poly(root_.get());
}

bool EntryExpr::is_constant() const { return !depends_on_var(root_.get()); }

}  // namespace bratteli
