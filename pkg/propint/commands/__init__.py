# commands 模块
# ci / plan / isoquant / coverage 子命令
