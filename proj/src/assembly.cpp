#include "tetfield/assembly.hpp"

namespace tetfield {

namespace {

// N' has only its third column populated, so P N' P^T collapses to the
// outer product of the rotated column with the face normal.
Mat3 embed_tensor(const FacePose& pose, const PartialTensor& pt) {
    const Vec3 g = pose.p * Vec3{pt.n_xz, pt.n_yz, pt.n_zz};
    return outer(g, pose.normal());
}

}  // namespace

Mat3 triangle_tensor(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& r) {
    const OrderedTriangle ot = order_largest_angle(a, b, c);
    const FacePose pose = face_basis(ot);
    const RightTriangleParams params = right_triangle_params(pose, ot);
    const Vec3 p = pose.to_local(r);
    return embed_tensor(pose, local_tensor({p.x, p.y, p.z}, params));
}

Vec3 triangle_field(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m, const Vec3& r) {
    return triangle_tensor(a, b, c, r) * m;
}

PreparedTet::PreparedTet(const Tetrahedron& t) : tet_(t) {
    validate_tetrahedron(t);
    const auto faces = tet_faces(t);
    for (int i = 0; i < 4; ++i) {
        const FaceVertices f = orient_outward(faces[i].face, faces[i].opposite);
        const OrderedTriangle ot = order_largest_angle(f.a, f.b, f.c);
        const FacePose pose = face_basis(ot);
        faces_[i] = {pose, right_triangle_params(pose, ot)};
    }
}

Mat3 PreparedTet::tensor(const Vec3& r) const {
    Mat3 n;
    for (const Face& f : faces_) {
        const Vec3 p = f.pose.to_local(r);
        n += embed_tensor(f.pose, local_tensor({p.x, p.y, p.z}, f.params));
    }
    return n;
}

Vec3 PreparedTet::field(const Vec3& r, const Vec3& m) const {
    Vec3 hsum;
    for (const Face& f : faces_) {
        const Vec3 p = f.pose.to_local(r);
        const PartialTensor pt = local_tensor({p.x, p.y, p.z}, f.params);
        const double mz = dot(f.pose.normal(), m);
        hsum += f.pose.p * Vec3{pt.n_xz * mz, pt.n_yz * mz, pt.n_zz * mz};
    }
    return hsum;
}

Mat3 tet_tensor(const Tetrahedron& t, const Vec3& r) { return PreparedTet(t).tensor(r); }

Vec3 tet_field(const MagnetizedTetrahedron& mt, const Vec3& r) {
    return PreparedTet(mt.tet).field(r, mt.m);
}

Vec3 b_field(const MagnetizedTetrahedron& mt, const Vec3& r) {
    const Containment c = contains(mt.tet, r);
    Vec3 h = tet_field(mt, r);
    if (c != Containment::outside) h += mt.m;
    return h * kMu0;
}

}  // namespace tetfield
