import numpy as np


def brute_force_gat(X, layer):
    """Per-head loops over nodes with the textbook attention formula."""
    weight = layer.weight.detach().numpy()
    att = np.concatenate([layer.att_src.detach().numpy(), layer.att_dst.detach().numpy()], axis=1)
    K = X.shape[0]
    outputs = []
    for t in range(layer.heads):
        Wh = X @ weight[t]
        node_out = np.zeros_like(Wh)
        for i in range(K):
            e = np.array([att[t] @ np.concatenate([Wh[i], Wh[j]]) for j in range(K)])
            e = np.where(e > 0, e, layer.leaky_slope * e)
            alpha = np.exp(e - e.max())
            alpha /= alpha.sum()
            total = sum(alpha[j] * Wh[j] for j in range(K))
            node_out[i] = np.where(total > 0, total, np.expm1(total))
        outputs.append(node_out)
    if layer.merge == 'mean':
        return np.mean(outputs, axis=0)
    return np.concatenate(outputs, axis=1)


def brute_force_glss(X, model):
    """Dense ReLU, two looped GAT layers, mean over nodes, dense sigmoid."""
    w1, b1 = model.dense1.weight.detach().numpy(), model.dense1.bias.detach().numpy()
    w2, b2 = model.dense2.weight.detach().numpy(), model.dense2.bias.detach().numpy()
    h = np.maximum(X @ w1.T + b1, 0)
    h = brute_force_gat(brute_force_gat(h, model.gat1), model.gat2)
    return 1.0 / (1.0 + np.exp(-(h.mean(axis=0) @ w2.T + b2)))
