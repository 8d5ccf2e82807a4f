#include "phasecoh/combs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phasecoh {

namespace {

Labels flatten(const std::vector<Labels>& groups, int upto_group = -1) {
  Labels out;
  int g = 0;
  for (const auto& grp : groups) {
    if (upto_group >= 0 && g > upto_group) break;
    out.insert(out.end(), grp.begin(), grp.end());
    ++g;
  }
  return out;
}

bool contains(const Labels& l, const std::string& x) { return std::find(l.begin(), l.end(), x) != l.end(); }

}  // namespace

Comb::Comb(CMatrix mat, std::vector<Labels> io) : mat_(std::move(mat)), io_(std::move(io)) {
  require(io_.size() >= 2 && io_.size() % 2 == 0, "Comb: io must list input/output groups in pairs");
  Labels all = flatten(io_);
  require(static_cast<int>(all.size()) == mat_.dims().size(), "Comb: io does not cover the matrix systems");
  for (const auto& l : all) mat_.dims().position(l);
}

Comb Comb::from_choi(const ChoiMatrix& j) { return Comb(j.mat(), {j.in().labels(), j.out().labels()}); }

int Comb::time_of(const std::string& label) const {
  for (size_t g = 0; g < io_.size(); ++g)
    if (contains(io_[g], label)) return static_cast<int>(g);
  return -1;
}

CMatrix link(const CMatrix& a, const CMatrix& b) {
  Labels shared;
  for (const auto& l : a.labels())
    if (b.dims().contains(l)) shared.push_back(l);
  for (const auto& l : shared)
    require(a.dims().dim(l) == b.dims().dim(l), "link: dimension mismatch on shared system '" + l + "'",
            ErrorKind::DimensionMismatch);
  SystemDims xa = a.dims().without(shared);
  SystemDims yb = b.dims().without(shared);
  SystemDims s = a.dims().select(shared);
  Labels ao = xa.labels(), bo = s.labels();
  ao.insert(ao.end(), shared.begin(), shared.end());
  bo.insert(bo.end(), yb.labels().begin(), yb.labels().end());
  const MatC am = reorder(a, ao).mat();  // (x, s)
  const MatC bm = reorder(b, bo).mat();  // (s, y)
  const int nx = xa.total(), ns = s.total(), ny = yb.total();
  // R[(x,y),(x',y')] = Σ_{s,s'} a[(x,s'),(x',s)] b[(s',y),(s,y')]
  MatC r = MatC::Zero(nx * ny, nx * ny);
  for (int x = 0; x < nx; ++x)
    for (int xp = 0; xp < nx; ++xp)
      for (int sp = 0; sp < ns; ++sp)
        for (int t = 0; t < ns; ++t) {
          cd av = am(x * ns + sp, xp * ns + t);
          if (av == 0.0) continue;
          for (int y = 0; y < ny; ++y)
            for (int yp = 0; yp < ny; ++yp) r(x * ny + y, xp * ny + yp) += av * bm(sp * ny + y, t * ny + yp);
        }
  return CMatrix(xa.concat(yb), r);
}

CMatrix link(const Comb& a, const Comb& b) {
  Labels shared;
  for (const auto& l : a.mat().labels())
    if (b.mat().dims().contains(l)) shared.push_back(l);
  auto is_output = [](const Comb& c, const std::string& l) { return c.time_of(l) % 2 == 1; };
  for (const auto& l : shared)
    require(is_output(a, l) != is_output(b, l),
            "link: shared system '" + l + "' must be an output of one comb and an input of the other");
  // A loop: a produces s1 after consuming s2, while b needs s1 before producing s2.
  for (const auto& s1 : shared)
    for (const auto& s2 : shared) {
      if (s1 == s2) continue;
      if (!(is_output(a, s1) && !is_output(a, s2))) continue;
      if (a.time_of(s2) < a.time_of(s1) && b.time_of(s1) < b.time_of(s2))
        fail(ErrorKind::InvalidArgument,
             "link: composition violates causal order (systems '" + s1 + "' and '" + s2 + "' form a loop)");
    }
  return link(a.mat(), b.mat());
}

bool is_comb(const CMatrix& mat, const std::vector<Labels>& io, double tol, std::string* diagnostic) {
  auto report = [&](const std::string& s) {
    if (diagnostic) *diagnostic = s;
    return false;
  };
  if (io.size() < 2 || io.size() % 2 != 0) return report("io must contain input/output pairs");
  if (!mat.is_hermitian(tol)) return report("not Hermitian");
  if (min_eigenvalue(mat.mat()) < -tol) return report("not positive semidefinite");
  const int n = static_cast<int>(io.size()) / 2 - 1;
  CMatrix j = reorder(mat, flatten(io));
  for (int level = n; level >= 1; --level) {
    const Labels& in = io[2 * level];
    const Labels& out = io[2 * level + 1];
    CMatrix t = partial_trace(j, out);
    CMatrix r = partial_trace(t, in);
    double din = mat.dims().dim_of(in);
    r = r * cd(1.0 / din);
    CMatrix expect = extend(r, t.dims());
    if (max_abs(t.mat() - expect.mat()) > tol) {
      std::ostringstream os;
      os << "level " << level << ": Tr of the outputs does not factor as identity on the inputs";
      return report(os.str());
    }
    j = r;
  }
  CMatrix t = partial_trace(j, io[1]);
  if (max_abs(t.mat() - MatC::Identity(t.rows(), t.rows())) > tol) return report("level 0: Tr_1 J differs from 1_0");
  if (diagnostic) diagnostic->clear();
  return true;
}

bool is_comb(const Comb& c, double tol, std::string* diagnostic) { return is_comb(c.mat(), c.io(), tol, diagnostic); }

bool is_mio_compatible(const Comb& c, double tol, int* failing_level) {
  for (int j = 0; j <= c.slots(); ++j) {
    Labels ins, outs;
    for (int t = 0; t <= j; ++t) {
      ins.insert(ins.end(), c.inputs(t).begin(), c.inputs(t).end());
      outs.insert(outs.end(), c.outputs(t).begin(), c.outputs(t).end());
    }
    CMatrix a = dephase(c.mat(), ins);
    CMatrix b = dephase(a, outs);
    if (max_abs(a.mat() - b.mat()) > tol) {
      if (failing_level) *failing_level = j;
      return false;
    }
  }
  if (failing_level) *failing_level = -1;
  return true;
}

Comb comb_from_network(const std::vector<ChoiMatrix>& channels) {
  require(!channels.empty(), "comb_from_network: no channels");
  // memory systems: labels occurring in more than one channel
  auto count = [&](const std::string& l) {
    int c = 0;
    for (const auto& ch : channels) c += ch.mat().dims().contains(l) ? 1 : 0;
    return c;
  };
  std::vector<Labels> io;
  for (size_t k = 0; k < channels.size(); ++k) {
    const auto& ch = channels[k];
    Labels in, out;
    for (const auto& l : ch.in().labels()) {
      int c = count(l);
      require(c <= 2, "comb_from_network: system '" + l + "' shared by more than two channels");
      if (c == 1) {
        in.push_back(l);
      } else {
        require(k > 0 && channels[k - 1].out().contains(l),
                "comb_from_network: memory system '" + l + "' must come from the preceding channel");
        require(channels[k - 1].out().dim(l) == ch.in().dim(l),
                "comb_from_network: memory dimension mismatch on '" + l + "'", ErrorKind::DimensionMismatch);
      }
    }
    for (const auto& l : ch.out().labels()) {
      int c = count(l);
      if (c == 1) {
        out.push_back(l);
      } else {
        require(k + 1 < channels.size() && channels[k + 1].in().contains(l),
                "comb_from_network: memory system '" + l + "' must feed the following channel");
      }
    }
    io.push_back(in);
    io.push_back(out);
  }
  CMatrix acc = channels.front().mat();
  for (size_t k = 1; k < channels.size(); ++k) acc = link(acc, channels[k].mat());
  return Comb(reorder(acc, flatten(io)), io);
}

namespace {

VecC bell(int which) {
  // Φ⁺, Φ⁻, Ψ⁺, Ψ⁻
  const double s = 1.0 / std::sqrt(2.0);
  VecC v = VecC::Zero(4);
  switch (which) {
    case 0:
      v(0) = s, v(3) = s;
      break;
    case 1:
      v(0) = s, v(3) = -s;
      break;
    case 2:
      v(1) = s, v(2) = s;
      break;
    default:
      v(1) = s, v(2) = -s;
      break;
  }
  return v;
}

MatC basis_proj(int d, int i) {
  MatC p = MatC::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

}  // namespace

Measurement bell_measurement() {
  Measurement m;
  for (int i = 0; i < 4; ++i) m.effects.push_back(bell(i) * bell(i).adjoint());
  return m;
}

Comb entangled_probe_superchannel(const Measurement& povm) {
  povm.validate();
  require(povm.effects.front().rows() == 4, "entangled_probe_superchannel: POVM must act on two qubits (2, A)",
          ErrorKind::DimensionMismatch);
  const int k = static_cast<int>(povm.effects.size());
  // N: 0 → 1,A,  ρ ↦ Tr[ρ] Φ⁺_{1,A}
  VecC phi = bell(0);
  CMatrix jn = tensor(CMatrix::identity(SystemDims({"0"}, {2})), CMatrix(SystemDims({"1", "A"}, {2, 2}), phi * phi.adjoint()));
  // K: 2,A → 3,  Choi Σ_i M_i^T ⊗ |i⟩⟨i|
  MatC jk = MatC::Zero(4 * k, 4 * k);
  for (int i = 0; i < k; ++i) {
    MatC mt = povm.effects[i].transpose();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) jk(r * k + i, c * k + i) += mt(r, c);
  }
  CMatrix jkm(SystemDims({"2", "A", "3"}, {2, 2, k}), jk);
  CMatrix s = link(jn, jkm);
  return Comb(reorder(s, {"0", "1", "2", "3"}), {{"0"}, {"1"}, {"2"}, {"3"}});
}

CMatrix bell_superchannel_closed_form() {
  MatC acc = MatC::Zero(32, 32);
  for (int i = 0; i < 4; ++i) {
    MatC b = bell(i) * bell(i).adjoint();
    MatC t(16, 16);
    t.setZero();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t(r * 4 + i, c * 4 + i) = b(r, c);
    for (int z = 0; z < 2; ++z) acc.block(z * 16, z * 16, 16, 16) += 0.5 * t;
  }
  return CMatrix(SystemDims({"0", "1", "2", "3"}, {2, 2, 2, 4}), acc);
}

Comb two_outcome_bell_superchannel() {
  MatC even = bell(0) * bell(0).adjoint() + bell(2) * bell(2).adjoint();
  MatC odd = bell(1) * bell(1).adjoint() + bell(3) * bell(3).adjoint();
  CMatrix inner = tensor(CMatrix(SystemDims({"1", "2"}, {2, 2}), even), CMatrix("3", basis_proj(2, 0))) +
                  tensor(CMatrix(SystemDims({"1", "2"}, {2, 2}), odd), CMatrix("3", basis_proj(2, 1)));
  CMatrix j = tensor(CMatrix::identity(SystemDims({"0"}, {2})), inner) * cd(0.5);
  return Comb(j, {{"0"}, {"1"}, {"2"}, {"3"}});
}

ChoiMatrix coherent_bit_channel() {
  VecC plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  CMatrix j = tensor(CMatrix(SystemDims({"1", "2"}, {2, 2}), bell(0) * bell(0).adjoint()),
                     CMatrix::projector("B", plus)) +
              tensor(CMatrix(SystemDims({"1", "2"}, {2, 2}), bell(1) * bell(1).adjoint()),
                     CMatrix::projector("B", minus));
  return ChoiMatrix(SystemDims({"1"}, {2}), SystemDims({"2", "B"}, {2, 2}), j);
}

CMatrix extracted_closed_form() {
  VecC plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  CMatrix in = tensor(CMatrix::projector("B", plus), CMatrix("3", basis_proj(4, 0))) +
               tensor(CMatrix::projector("B", minus), CMatrix("3", basis_proj(4, 1)));
  return tensor(CMatrix::identity(SystemDims({"0"}, {2})), in) * cd(0.5);
}

CoherentBitExtraction extract_coherent_bit() {
  Comb s = entangled_probe_superchannel(bell_measurement());
  ChoiMatrix m = coherent_bit_channel();
  CMatrix linked = reorder(link(s.mat(), m.mat()), {"0", "B", "3"});
  // Channel 0 → B,3 is a replacement channel; feed any input.
  ChoiMatrix ch(SystemDims({"0"}, {2}), SystemDims({"B", "3"}, {2, 4}), linked);
  MatC zero = basis_proj(2, 0);
  CMatrix out = apply_choi(ch, CMatrix("0", zero));
  // measure 3, apply Z^{outcome parity} on B
  MatC z = MatC::Identity(2, 2);
  z(1, 1) = -1.0;
  MatC b = MatC::Zero(2, 2);
  for (int i = 0; i < 4; ++i) {
    CMatrix proj = tensor(CMatrix::identity(SystemDims({"B"}, {2})), CMatrix("3", basis_proj(4, i)));
    CMatrix branch = partial_trace(proj * out * proj, {"3"});
    MatC corr = (i % 2 == 1) ? z : MatC(MatC::Identity(2, 2));
    b += corr * branch.mat() * corr.adjoint();
  }
  return {linked, DensityMatrix(b, "B")};
}

}  // namespace phasecoh
