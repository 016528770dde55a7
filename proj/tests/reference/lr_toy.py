"""Independent check: multinomial logistic regression by full-batch gradient
descent (mean cross-entropy, L2 on weights only, zero init) on the toy set
used in test_classifiers.cpp. Prints training accuracy and final loss."""
import numpy as np

X = np.array([[-2.0, -1.0], [-1.5, -2.0], [-3.0, -2.5], [-1.0, -1.5], [-2.5, -0.5], [-1.2, -2.2],
              [2.0, 1.0], [1.5, 2.0], [3.0, 2.5], [1.0, 1.5], [2.5, 0.5], [1.2, 2.2],
              [-0.8, 2.5], [-1.5, 3.0], [-0.5, 3.5]])
y = np.array([0] * 6 + [1] * 6 + [2] * 3)
c, (n, a) = 3, X.shape
W = np.zeros((c, a))
b = np.zeros(c)
l2, lr = 1e-4, 0.1
Y = np.eye(c)[y]
for _ in range(500):
    Z = X @ W.T + b
    Z -= Z.max(axis=1, keepdims=True)
    P = np.exp(Z)
    P /= P.sum(axis=1, keepdims=True)
    G = (P - Y) / n
    W -= lr * (G.T @ X + l2 * W)
    b -= lr * G.sum(axis=0)
Z = X @ W.T + b
P = np.exp(Z - Z.max(axis=1, keepdims=True))
P /= P.sum(axis=1, keepdims=True)
print("accuracy", (P.argmax(axis=1) == y).mean())
print("loss", -np.log(P[np.arange(n), y]).mean() + 0.5 * l2 * (W ** 2).sum())
