#include "amsum/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace amsum {

Var Graph::push(Tensor2D value, bool requires_grad, std::function<void(Graph&, int)> bw) {
    nodes_.push_back(Node{std::move(value), Tensor2D(), requires_grad, std::move(bw)});
    return Var{static_cast<int>(nodes_.size()) - 1};
}

Graph::Node& Graph::node(Var v) {
    if (!v.valid() || v.id >= static_cast<int>(nodes_.size())) {
        throw ArgumentError("Graph: invalid Var handle");
    }
    return nodes_[static_cast<std::size_t>(v.id)];
}

const Graph::Node& Graph::node(Var v) const {
    if (!v.valid() || v.id >= static_cast<int>(nodes_.size())) {
        throw ArgumentError("Graph: invalid Var handle");
    }
    return nodes_[static_cast<std::size_t>(v.id)];
}

Tensor2D& Graph::grad_buf(int id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.grad.empty()) n.grad = Tensor2D::zeros(n.value.rows(), n.value.cols());
    return n.grad;
}

const Tensor2D& Graph::value(Var v) const { return node(v).value; }

const Tensor2D& Graph::grad(Var v) {
    Node& n = node(v);
    if (n.grad.empty()) n.grad = Tensor2D::zeros(n.value.rows(), n.value.cols());
    return n.grad;
}

Var Graph::leaf(Tensor2D value) { return push(std::move(value), true, nullptr); }

Var Graph::constant(Tensor2D value) { return push(std::move(value), false, nullptr); }

Var Graph::matmul(Var a, Var b) {
    const Tensor2D& av = value(a);
    const Tensor2D& bv = value(b);
    Tensor2D out = amsum::matmul(av, bv);
    const bool track = tracked(a) || tracked(b);
    if (!track) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, b](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& av = g.value(a);
        const Tensor2D& bv = g.value(b);
        const int n = av.rows(), k = av.cols(), m = bv.cols();
        if (g.tracked(a)) {
            Tensor2D& da = g.grad_buf(a.id);  // dA += G * B^T
            for (int i = 0; i < n; ++i) {
                for (int p = 0; p < k; ++p) {
                    double s = 0.0;
                    for (int j = 0; j < m; ++j) s += gout.at(i, j) * bv.at(p, j);
                    da.at(i, p) += s;
                }
            }
        }
        if (g.tracked(b)) {
            Tensor2D& db = g.grad_buf(b.id);  // dB += A^T * G
            for (int i = 0; i < n; ++i) {
                for (int p = 0; p < k; ++p) {
                    const double av_ip = av.at(i, p);
                    if (av_ip == 0.0) continue;
                    for (int j = 0; j < m; ++j) db.at(p, j) += av_ip * gout.at(i, j);
                }
            }
        }
    });
}

Var Graph::add(Var a, Var b) {
    Tensor2D out = amsum::add(value(a), value(b));
    const bool track = tracked(a) || tracked(b);
    if (!track) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, b](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        if (g.tracked(a)) {
            Tensor2D& da = g.grad_buf(a.id);
            for (std::size_t i = 0; i < gout.size(); ++i) da[i] += gout[i];
        }
        if (g.tracked(b)) {
            Tensor2D& db = g.grad_buf(b.id);
            for (std::size_t i = 0; i < gout.size(); ++i) db[i] += gout[i];
        }
    });
}

Var Graph::mul(Var a, Var b) {
    Tensor2D out = amsum::mul(value(a), value(b));
    const bool track = tracked(a) || tracked(b);
    if (!track) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, b](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& av = g.value(a);
        const Tensor2D& bv = g.value(b);
        if (g.tracked(a)) {
            Tensor2D& da = g.grad_buf(a.id);
            for (std::size_t i = 0; i < gout.size(); ++i) da[i] += gout[i] * bv[i];
        }
        if (g.tracked(b)) {
            Tensor2D& db = g.grad_buf(b.id);
            for (std::size_t i = 0; i < gout.size(); ++i) db[i] += gout[i] * av[i];
        }
    });
}

Var Graph::sigmoid(Var a) {
    Tensor2D out = amsum::sigmoid(value(a));
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& y = g.nodes_[self].value;
        Tensor2D& da = g.grad_buf(a.id);
        for (std::size_t i = 0; i < gout.size(); ++i) da[i] += gout[i] * y[i] * (1.0 - y[i]);
    });
}

Var Graph::tanh(Var a) {
    Tensor2D out = amsum::tanh(value(a));
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& y = g.nodes_[self].value;
        Tensor2D& da = g.grad_buf(a.id);
        for (std::size_t i = 0; i < gout.size(); ++i) da[i] += gout[i] * (1.0 - y[i] * y[i]);
    });
}

Var Graph::scale(Var a, double k) {
    Tensor2D out = value(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= k;
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, k](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        Tensor2D& da = g.grad_buf(a.id);
        for (std::size_t i = 0; i < gout.size(); ++i) da[i] += k * gout[i];
    });
}

Var Graph::transpose(Var a) {
    Tensor2D out = amsum::transpose(value(a));
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        Tensor2D& da = g.grad_buf(a.id);
        for (int i = 0; i < gout.rows(); ++i) {
            for (int j = 0; j < gout.cols(); ++j) da.at(j, i) += gout.at(i, j);
        }
    });
}

Var Graph::concat_cols(Var a, Var b) {
    const Tensor2D& av = value(a);
    const Tensor2D& bv = value(b);
    if (av.rows() != bv.rows()) {
        throw DimensionError("concat_cols: " + av.shape_str() + " vs " + bv.shape_str());
    }
    Tensor2D out(av.rows(), av.cols() + bv.cols());
    for (int i = 0; i < av.rows(); ++i) {
        for (int j = 0; j < av.cols(); ++j) out.at(i, j) = av.at(i, j);
        for (int j = 0; j < bv.cols(); ++j) out.at(i, av.cols() + j) = bv.at(i, j);
    }
    const bool track = tracked(a) || tracked(b);
    if (!track) return push(std::move(out), false, nullptr);
    const int acols = av.cols();
    return push(std::move(out), true, [a, b, acols](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        if (g.tracked(a)) {
            Tensor2D& da = g.grad_buf(a.id);
            for (int i = 0; i < da.rows(); ++i) {
                for (int j = 0; j < da.cols(); ++j) da.at(i, j) += gout.at(i, j);
            }
        }
        if (g.tracked(b)) {
            Tensor2D& db = g.grad_buf(b.id);
            for (int i = 0; i < db.rows(); ++i) {
                for (int j = 0; j < db.cols(); ++j) db.at(i, j) += gout.at(i, acols + j);
            }
        }
    });
}

Var Graph::concat_rows(const std::vector<Var>& parts) {
    if (parts.empty()) throw ArgumentError("concat_rows: no parts");
    int total_rows = 0;
    const int cols = value(parts[0]).cols();
    bool track = false;
    for (Var p : parts) {
        const Tensor2D& pv = value(p);
        if (pv.cols() != cols) {
            throw DimensionError("concat_rows: column mismatch " + pv.shape_str());
        }
        total_rows += pv.rows();
        track = track || tracked(p);
    }
    Tensor2D out(total_rows, cols);
    int r = 0;
    for (Var p : parts) {
        const Tensor2D& pv = value(p);
        for (int i = 0; i < pv.rows(); ++i, ++r) {
            for (int j = 0; j < cols; ++j) out.at(r, j) = pv.at(i, j);
        }
    }
    if (!track) return push(std::move(out), false, nullptr);
    std::vector<Var> held = parts;
    return push(std::move(out), true, [held](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        int r = 0;
        for (Var p : held) {
            const Tensor2D& pv = g.value(p);
            if (g.tracked(p)) {
                Tensor2D& dp = g.grad_buf(p.id);
                for (int i = 0; i < pv.rows(); ++i) {
                    for (int j = 0; j < pv.cols(); ++j) dp.at(i, j) += gout.at(r + i, j);
                }
            }
            r += pv.rows();
        }
    });
}

Var Graph::slice_cols(Var a, int begin, int len) {
    const Tensor2D& av = value(a);
    if (begin < 0 || len <= 0 || begin + len > av.cols()) {
        std::ostringstream os;
        os << "slice_cols: [" << begin << ", " << begin + len << ") out of " << av.shape_str();
        throw DimensionError(os.str());
    }
    Tensor2D out(av.rows(), len);
    for (int i = 0; i < av.rows(); ++i) {
        for (int j = 0; j < len; ++j) out.at(i, j) = av.at(i, begin + j);
    }
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, begin, len](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        Tensor2D& da = g.grad_buf(a.id);
        for (int i = 0; i < gout.rows(); ++i) {
            for (int j = 0; j < len; ++j) da.at(i, begin + j) += gout.at(i, j);
        }
    });
}

Var Graph::rows(Var a, std::vector<int> ids) {
    const Tensor2D& av = value(a);
    if (ids.empty()) throw ArgumentError("rows: empty id list");
    for (int id : ids) {
        if (id < 0 || id >= av.rows()) {
            std::ostringstream os;
            os << "rows: id " << id << " out of range for " << av.shape_str();
            throw IndexError(os.str());
        }
    }
    Tensor2D out(static_cast<int>(ids.size()), av.cols());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        for (int j = 0; j < av.cols(); ++j) out.at(static_cast<int>(k), j) = av.at(ids[k], j);
    }
    if (!tracked(a)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [a, ids = std::move(ids)](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        Tensor2D& da = g.grad_buf(a.id);
        for (std::size_t k = 0; k < ids.size(); ++k) {
            for (int j = 0; j < gout.cols(); ++j) {
                da.at(ids[k], j) += gout.at(static_cast<int>(k), j);
            }
        }
    });
}

Var Graph::add_row_broadcast(Var m, Var r) {
    const Tensor2D& mv = value(m);
    const Tensor2D& rv = value(r);
    if (rv.rows() != 1 || rv.cols() != mv.cols()) {
        throw DimensionError("add_row_broadcast: " + mv.shape_str() + " vs " + rv.shape_str());
    }
    Tensor2D out = mv;
    for (int i = 0; i < out.rows(); ++i) {
        for (int j = 0; j < out.cols(); ++j) out.at(i, j) += rv.at(0, j);
    }
    const bool track = tracked(m) || tracked(r);
    if (!track) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [m, r](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        if (g.tracked(m)) {
            Tensor2D& dm = g.grad_buf(m.id);
            for (std::size_t i = 0; i < gout.size(); ++i) dm[i] += gout[i];
        }
        if (g.tracked(r)) {
            Tensor2D& dr = g.grad_buf(r.id);
            for (int i = 0; i < gout.rows(); ++i) {
                for (int j = 0; j < gout.cols(); ++j) dr.at(0, j) += gout.at(i, j);
            }
        }
    });
}

Var Graph::softmax_row(Var v) {
    Tensor2D out = amsum::softmax(value(v));
    if (!tracked(v)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [v](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& y = g.nodes_[self].value;
        Tensor2D& dv = g.grad_buf(v.id);
        double dot = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) dot += gout[i] * y[i];
        for (std::size_t i = 0; i < y.size(); ++i) dv[i] += y[i] * (gout[i] - dot);
    });
}

Var Graph::masked_softmax_row(Var v, std::vector<std::uint8_t> keep) {
    const Tensor2D& xv = value(v);
    if (xv.rows() != 1) {
        throw DimensionError("masked_softmax_row: expected row vector, got " + xv.shape_str());
    }
    if (keep.size() != xv.size()) {
        throw DimensionError("masked_softmax_row: mask length mismatch");
    }
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] && xv[i] > m) m = xv[i];
    }
    if (!std::isfinite(m)) throw ArgumentError("masked_softmax_row: all positions masked");
    Tensor2D out(1, xv.cols());
    double z = 0.0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) {
            out[i] = std::exp(xv[i] - m);
            z += out[i];
        }
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) out[i] /= z;
    }
    if (!tracked(v)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [v, keep = std::move(keep)](Graph& g, int self) {
        const Tensor2D& gout = g.nodes_[self].grad;
        const Tensor2D& y = g.nodes_[self].value;
        Tensor2D& dv = g.grad_buf(v.id);
        double dot = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (keep[i]) dot += gout[i] * y[i];
        }
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (keep[i]) dv[i] += y[i] * (gout[i] - dot);
        }
    });
}

Var Graph::nll(Var dist, int target) {
    const Tensor2D& dv = value(dist);
    const double loss = nll_loss(dv, target);  // validates range and normalization
    Tensor2D out(1, 1, {loss});
    if (!tracked(dist)) return push(std::move(out), false, nullptr);
    return push(std::move(out), true, [dist, target](Graph& g, int self) {
        const double gout = g.nodes_[self].grad[0];
        const Tensor2D& dv = g.value(dist);
        Tensor2D& dd = g.grad_buf(dist.id);
        dd[static_cast<std::size_t>(target)] -=
            gout / (dv[static_cast<std::size_t>(target)] + kNllFloor);
    });
}

Var Graph::pointer_mixture(Var p_vocab, Var alpha, Var p_gen, std::vector<int> extended_ids,
                           int n_oov) {
    const Tensor2D& pv = value(p_vocab);
    const Tensor2D& av = value(alpha);
    const Tensor2D& gv = value(p_gen);
    if (pv.rows() != 1 || av.rows() != 1 || gv.rows() != 1 || gv.cols() != 1) {
        throw DimensionError("pointer_mixture: expected row vectors and scalar p_gen");
    }
    if (static_cast<std::size_t>(av.cols()) != extended_ids.size()) {
        std::ostringstream os;
        os << "pointer_mixture: alpha length " << av.cols() << " vs " << extended_ids.size()
           << " extended ids";
        throw DimensionError(os.str());
    }
    const int vocab = pv.cols();
    const int ext = vocab + n_oov;
    for (int id : extended_ids) {
        if (id < 0 || id >= ext) {
            std::ostringstream os;
            os << "pointer_mixture: extended id " << id << " out of range [0, " << ext << ")";
            throw IndexError(os.str());
        }
    }
    const double pg = gv[0];
    Tensor2D out(1, ext);
    for (int w = 0; w < vocab; ++w) out[static_cast<std::size_t>(w)] = pg * pv[w];
    for (std::size_t t = 0; t < extended_ids.size(); ++t) {
        out[static_cast<std::size_t>(extended_ids[t])] += (1.0 - pg) * av[t];
    }
    const bool track = tracked(p_vocab) || tracked(alpha) || tracked(p_gen);
    if (!track) return push(std::move(out), false, nullptr);
    return push(std::move(out), true,
                [p_vocab, alpha, p_gen, ids = std::move(extended_ids)](Graph& g, int self) {
                    const Tensor2D& gout = g.nodes_[self].grad;
                    const Tensor2D& pv = g.value(p_vocab);
                    const Tensor2D& av = g.value(alpha);
                    const double pg = g.value(p_gen)[0];
                    const int vocab = pv.cols();
                    if (g.tracked(p_vocab)) {
                        Tensor2D& dp = g.grad_buf(p_vocab.id);
                        for (int w = 0; w < vocab; ++w) dp[w] += pg * gout[w];
                    }
                    if (g.tracked(alpha)) {
                        Tensor2D& da = g.grad_buf(alpha.id);
                        for (std::size_t t = 0; t < ids.size(); ++t) {
                            da[t] += (1.0 - pg) * gout[static_cast<std::size_t>(ids[t])];
                        }
                    }
                    if (g.tracked(p_gen)) {
                        double dg = 0.0;
                        for (int w = 0; w < vocab; ++w) dg += gout[w] * pv[w];
                        for (std::size_t t = 0; t < ids.size(); ++t) {
                            dg -= gout[static_cast<std::size_t>(ids[t])] * av[t];
                        }
                        g.grad_buf(p_gen.id)[0] += dg;
                    }
                });
}

void Graph::backward(Var root) {
    const Tensor2D& rv = value(root);
    if (rv.rows() != 1 || rv.cols() != 1) {
        throw DimensionError("backward: root must be scalar, got " + rv.shape_str());
    }
    grad_buf(root.id)[0] = 1.0;
    for (int id = root.id; id >= 0; --id) {
        Node& n = nodes_[static_cast<std::size_t>(id)];
        if (!n.grad.empty() && n.backward) n.backward(*this, id);
    }
}

}  // namespace amsum
