5 9
2 1 2
2 2 3
2 3 4
2 4 1
2 5 1
2 5 3
1 2
1 4
1 5
