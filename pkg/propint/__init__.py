# propint 模块
# 有限/无限总体下二项比例的 Wilson 置信区间、样本量规划与覆盖率校验
